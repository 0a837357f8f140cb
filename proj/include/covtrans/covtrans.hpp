#pragma once

// Covariant-transform toolkit: concrete groups, representations, fiducial
// operators, the transform engine with its verifiers, invariant pairings with
// the inverse transform, and the finite-dimensional operator-model calculus.

#include "covtrans/core.hpp"
#include "covtrans/groups.hpp"
#include "covtrans/matrix.hpp"
#include "covtrans/signal.hpp"
#include "covtrans/repr.hpp"
#include "covtrans/fiducial.hpp"
#include "covtrans/xform.hpp"
#include "covtrans/pairing.hpp"
#include "covtrans/opmodel.hpp"
#include "covtrans/io.hpp"
