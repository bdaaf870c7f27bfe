#pragma once
// Umbrella header for the whole library.

#include "wiretap/matops.hpp"
#include "wiretap/secrecy.hpp"
#include "wiretap/uncertainty.hpp"
#include "wiretap/verify.hpp"
#include "wiretap/dmc.hpp"
#include "wiretap/io.hpp"
#include "wiretap/cli.hpp"
