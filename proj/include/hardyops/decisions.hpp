#ifndef HARDYOPS_DECISIONS_HPP
#define HARDYOPS_DECISIONS_HPP

#include "hardyops/commute.hpp"
#include "hardyops/dual_truncated.hpp"
#include "hardyops/semi_commute.hpp"
#include "hardyops/sio.hpp"
#include "hardyops/toeplitz_hankel.hpp"

#endif
