#include "qcpn/corpus.hpp"

namespace qcpn {

namespace {

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

Word random_word(const Algebra& alg, Rng& rng, int max_len) {
  Word w;
  int len = uniform(rng, 1, max_len);
  for (int t = 0; t < len; ++t) w.letters.push_back(u(uniform(rng, 1, alg.dim()), uniform(rng, 1, alg.dim())));
  return w;
}

NCPoly random_element(const Algebra& alg, Rng& rng, int max_len, int max_terms) {
  NCPoly p;
  int terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    int c = uniform(rng, 1, 3) * (uniform(rng, 0, 1) ? 1 : -1);
    p.add_term(random_word(alg, rng, max_len), ScalarRat(c) * spow(uniform(rng, -2, 2)));
  }
  if (p.is_zero()) p = NCPoly::monomial(random_word(alg, rng, max_len));
  return p;
}

NCPoly disguise(const Algebra& alg, Rng& rng, const NCPoly& a) {
  const auto& rels = alg.relations();
  const Relation& r = rels[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(rels.size()) - 1))];
  NCPoly x = uniform(rng, 0, 1) ? NCPoly::monomial(random_word(alg, rng, 1)) : NCPoly(1);
  NCPoly y = uniform(rng, 0, 1) ? NCPoly::monomial(random_word(alg, rng, 1)) : NCPoly(1);
  return a + x * r.difference() * y * ScalarRat(uniform(rng, 1, 3));
}

NCPoly random_sphere_word(const Algebra& alg, Rng& rng, int max_len) {
  NCPoly p(1);
  int len = uniform(rng, 1, max_len);
  for (int t = 0; t < len; ++t) {
    int i = uniform(rng, 1, alg.dim());
    p = alg.mul(p, uniform(rng, 0, 1) ? alg.z(i) : alg.zbar(i));
  }
  return p;
}

}  // namespace qcpn
