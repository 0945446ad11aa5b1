#ifndef NEARLAP_NEARLAP_HPP
#define NEARLAP_NEARLAP_HPP

#include "nearlap/bench.hpp"
#include "nearlap/errors.hpp"
#include "nearlap/io.hpp"
#include "nearlap/l2_variants.hpp"
#include "nearlap/lp_oracle.hpp"
#include "nearlap/matrix.hpp"
#include "nearlap/projection.hpp"
#include "nearlap/rng.hpp"
#include "nearlap/spectra.hpp"
#include "nearlap/synthgen.hpp"

#endif  // NEARLAP_NEARLAP_HPP
