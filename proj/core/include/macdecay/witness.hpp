#pragma once

#include <optional>
#include <utility>

#include "macdecay/field_elem.hpp"

namespace macdecay {

/// N(a)N(d) - N(b)N(c) for norms from L down to K; requires [L:K] = 2.
QuadElem two_user_norm_det(const FieldElem& a, const FieldElem& b, const FieldElem& c, const FieldElem& d);

/// True iff some nonzero x, y give det [[a x, b sigma(x)], [c y, d sigma(y)]] = 0.
bool two_user_singularity_test(const FieldElem& a, const FieldElem& b, const FieldElem& c, const FieldElem& d);

/// det [[a x, b sigma(x)], [c y, d sigma(y)]].
FieldElem two_user_det(const FieldElem& a, const FieldElem& b, const FieldElem& c, const FieldElem& d, const FieldElem& x,
                       const FieldElem& y);

/// Integral nonzero (x, y) with vanishing two-user determinant, built from
/// a Hilbert 90 preimage of ad/bc; nullopt when the norm test fails.
std::optional<std::pair<FieldElem, FieldElem>> zero_det_witness_2user(const FieldElem& a, const FieldElem& b, const FieldElem& c,
                                                                      const FieldElem& d);

}  // namespace macdecay
