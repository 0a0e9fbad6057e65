// Licensed under the Apache License 2.0 (see LICENSE file).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
