#pragma once

// Umbrella header for the numerical core (no CLI or serialization dependencies).

#include "ohno/complex.hpp"
#include "ohno/error.hpp"
#include "ohno/eval_result.hpp"
#include "ohno/index.hpp"
#include "ohno/integral.hpp"
#include "ohno/options.hpp"
#include "ohno/relations.hpp"
#include "ohno/series.hpp"
#include "ohno/zeta.hpp"
