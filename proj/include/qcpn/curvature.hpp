#ifndef QCPN_CURVATURE_HPP
#define QCPN_CURVATURE_HPP

#include <optional>

#include "qcpn/calculus.hpp"
#include "qcpn/report.hpp"

namespace qcpn {

/// P(f) = (id (x) Pi^{(1,0)}) unit(df).
OneForm holo_derivative(const Calculus& calc, const NCPoly& f);

/// The scalar c with a = c * b, if one exists (b must be nonzero).
std::optional<ScalarRat> proportionality(const OneForm& a, const OneForm& b);

/// z_1 P(z_1) = factor * P(z_1) z_1; the default factor is s^2.
VerificationReport verify_commutation(const Calculus& calc, std::optional<ScalarRat> factor = {});

/// P(z_1^k) = (k)_{s^t} P(z_1) z_1^{k-1} with t = base_exponent.
VerificationReport verify_lemma(const Calculus& calc, int k, int base_exponent = 2);

/// P(z_1^{k+1}) = P(z_1^k) z_1 + z_1^k P(z_1).
VerificationReport verify_leibniz_recursion(const Calculus& calc, int k);

/// Pi^{(0,1)} unit(d z_1^k) = 0 and Pi^{(0,1)} unit(d z_i) = 0 for every i.
VerificationReport verify_holomorphic(const Calculus& calc, int k);

/// sum_i P(u^1_1 S(u^1_i)) u^i_1 z_1^{k-1} = P(z_1) z_1^{k-1}, each
/// u^1_1 S(u^1_i) of degree 0.
VerificationReport verify_decomposition(const Calculus& calc, int k);

/// The scalar c with P(z_1^k) = c z_1^{k-1} P(z_1), compared with
/// (k)_{s^t}, t = base_exponent (default -2).
VerificationReport curvature_coefficient(const Calculus& calc, int k, int base_exponent = -2);

/// (k)_{s^t} s^{t(1-k)} = (k)_{s^-t}.
VerificationReport verify_qint_conversion(int k, int t);

}  // namespace qcpn

#endif  // QCPN_CURVATURE_HPP
