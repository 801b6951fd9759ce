#pragma once

#include "hardyfrac/params.hpp"
#include "hardyfrac/special.hpp"
#include "hardyfrac/exponents.hpp"
#include "hardyfrac/radial_function.hpp"
#include "hardyfrac/radial_kernel.hpp"
#include "hardyfrac/weighted_op.hpp"
#include "hardyfrac/constants.hpp"
#include "hardyfrac/identity.hpp"
#include "hardyfrac/solver.hpp"
#include "hardyfrac/probe.hpp"
#include "hardyfrac/report.hpp"
