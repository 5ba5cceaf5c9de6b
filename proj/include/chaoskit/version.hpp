#pragma once

#define CHAOSKIT_VERSION "0.1.0"
