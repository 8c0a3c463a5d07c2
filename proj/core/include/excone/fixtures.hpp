#pragma once

#include "excone/fourier.hpp"

namespace excone::fixtures {

/// Bundled exact 5x5 reference data: a doubly nonnegative matrix that is not
/// completely positive, its cosine coefficient vector and published Gram
/// matrix, and a companion copositive matrix that is not SPN. These are the
/// regression anchors for the exact arithmetic stack.

FourierCoeffs seed_coeffs();       // a_1..a_6, in Q(sqrt2)
ExactSymMatrix seed_matrix();      // the 5x5 compression, entered literally
ExactSymMatrix seed_gram();        // published 4x4 Gram over (1, cos, cos, cos)
ExactSymMatrix ecop_matrix();      // the 5x5 copositive companion

}  // namespace excone::fixtures
