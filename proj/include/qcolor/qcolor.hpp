#pragma once

// Umbrella header for the whole library.

#include "qcolor/box.hpp"
#include "qcolor/colored.hpp"
#include "qcolor/congruence.hpp"
#include "qcolor/json_io.hpp"
#include "qcolor/parallel.hpp"
#include "qcolor/partitions.hpp"
#include "qcolor/qpolynomial.hpp"
#include "qcolor/rings.hpp"
#include "qcolor/series.hpp"
