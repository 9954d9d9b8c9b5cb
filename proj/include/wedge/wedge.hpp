#pragma once

#include "wedge/builders.hpp"
#include "wedge/chart.hpp"
#include "wedge/error.hpp"
#include "wedge/form.hpp"
#include "wedge/parse.hpp"
#include "wedge/profile.hpp"
#include "wedge/scalar.hpp"
#include "wedge/scenario.hpp"
#include "wedge/verify.hpp"
