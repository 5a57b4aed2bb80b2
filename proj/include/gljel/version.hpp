#pragma once

#define GLJEL_VERSION_MAJOR 0
#define GLJEL_VERSION_MINOR 1
#define GLJEL_VERSION_PATCH 0
#define GLJEL_VERSION "0.1.0"
