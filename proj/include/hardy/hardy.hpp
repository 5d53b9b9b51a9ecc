// hardy.hpp: every module of the library.
#pragma once

#include "hardy/numeric.hpp"
#include "hardy/mp.hpp"
#include "hardy/special.hpp"
#include "hardy/zeros.hpp"
#include "hardy/quad.hpp"
#include "hardy/distribution.hpp"
#include "hardy/jutila.hpp"
#include "hardy/divisor.hpp"
#include "hardy/constants.hpp"
#include "hardy/meansq.hpp"
#include "hardy/report.hpp"
#include "hardy/cache.hpp"
