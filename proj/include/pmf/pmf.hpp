#pragma once

#include "pmf/config.hpp"
#include "pmf/eigenforms.hpp"
#include "pmf/eisenstein.hpp"
#include "pmf/errors.hpp"
#include "pmf/family.hpp"
#include "pmf/fixtures.hpp"
#include "pmf/intops.hpp"
#include "pmf/katz.hpp"
#include "pmf/miller.hpp"
#include "pmf/modmatrix.hpp"
#include "pmf/padic.hpp"
#include "pmf/panchishkin.hpp"
#include "pmf/primepower.hpp"
#include "pmf/rankin.hpp"
#include "pmf/series.hpp"
