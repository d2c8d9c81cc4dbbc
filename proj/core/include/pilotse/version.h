// SPDX-License-Identifier: Apache-2.0
#ifndef PILOTSE_VERSION_H
#define PILOTSE_VERSION_H

#define PILOTSE_VERSION_MAJOR 1
#define PILOTSE_VERSION_MINOR 0
#define PILOTSE_VERSION_PATCH 0
#define PILOTSE_VERSION_STRING "1.0.0"

namespace pilotse {

inline const char* version() { return PILOTSE_VERSION_STRING; }

}

#endif
