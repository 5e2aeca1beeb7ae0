#ifndef QCPN_CORPUS_HPP
#define QCPN_CORPUS_HPP

#include <random>

#include "qcpn/ncalg.hpp"

namespace qcpn {

using Rng = std::mt19937_64;

/// Uniform word of length 1..max_len in the generators.
Word random_word(const Algebra& alg, Rng& rng, int max_len);
/// Sum of 1..max_terms random words with small nonzero coefficients in Q[s, 1/s].
NCPoly random_element(const Algebra& alg, Rng& rng, int max_len, int max_terms);
/// a + x r y for a random relation r and random words x, y of length <= 1:
/// equal to a in the algebra but (usually) a different free expression.
NCPoly disguise(const Algebra& alg, Rng& rng, const NCPoly& a);
/// Random word in the sphere generators z_i, zbar_i, reduced.
NCPoly random_sphere_word(const Algebra& alg, Rng& rng, int max_len);

}  // namespace qcpn

#endif  // QCPN_CORPUS_HPP
