#pragma once

#include "vieta/classify.hpp"
#include "vieta/conic.hpp"
#include "vieta/davenport.hpp"
#include "vieta/errors.hpp"
#include "vieta/factor.hpp"
#include "vieta/numeric.hpp"
#include "vieta/oracle.hpp"
#include "vieta/pell.hpp"
#include "vieta/qfield.hpp"
#include "vieta/rational.hpp"
