#pragma once

// Umbrella header.

#include "mvprob/rational.hpp"
#include "mvprob/algebra.hpp"
#include "mvprob/axioms.hpp"
#include "mvprob/spectra.hpp"
#include "mvprob/hull.hpp"
#include "mvprob/states.hpp"
#include "mvprob/representation.hpp"
#include "mvprob/lp.hpp"
#include "mvprob/moments.hpp"
#include "mvprob/holder.hpp"
#include "mvprob/independence.hpp"
