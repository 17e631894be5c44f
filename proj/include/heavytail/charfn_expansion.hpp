#ifndef HEAVYTAIL_CHARFN_EXPANSION_HPP
#define HEAVYTAIL_CHARFN_EXPANSION_HPP

#include <complex>
#include <map>
#include <vector>

#include "heavytail/density_model.hpp"
#include "heavytail/rational.hpp"

namespace heavytail::charfn {

/// One grouped composition in the coefficient xi_{k,q}: the multiset of part
/// sizes (each >= 3, sum of (j-2) equal to q-2) with the exact rational weight
/// (number of orderings) / (product of j!).
struct XiTerm {
    std::vector<int> parts;  // non-decreasing
    Rational coeff;
};

/// Symbolic composition table for xi_{k,q}; memoized, thread-safe after first
/// access per (k, q).
const std::vector<XiTerm>& xi_kq_terms(int k, int q);

/// xi_{k,q} is a monomial c * (i theta)^{q + 2k - 2}; this evaluates c for a
/// concrete cumulant set. `empty` marks impossible compositions.
struct XiMonomial {
    int degree = 0;
    double coeff = 0.0;
    bool empty = true;
};

XiMonomial xi_kq(int k, int q, const density::CumulantSet& cumulants);

enum class XiCase {
    SymmetricNonEven,   // coefficient with L(1/|theta|)
    SymmetricEven,      // coefficient with zeta_L(1/|theta|)
    TwoSidedEven,       // zeta_{L_r} and sign(theta)-weighted L_s
    TwoSidedOdd,        // sign(theta)-weighted zeta_{L_s} and L_r
    TwoSidedNonInteger  // L_r and sign(theta)-weighted L_s
};

/// Small-theta expansion of the cumulant generating function
/// psi(theta) = chi(theta) + xi(theta) + o(xi(theta)):
/// chi is the Taylor part sum_j kappa_j (i theta)^j / j!, xi the non-analytic
/// component in the parity/symmetry case of the tail index.
class CharFnExpansion {
public:
    std::complex<double> chi(double theta) const;
    std::complex<double> xi(double theta) const;
    /// chi + xi (the o(xi) remainder is a test property, not part of the API).
    std::complex<double> psi(double theta) const;

    const std::map<int, double>& chi_coeffs() const { return chi_coeffs_; }
    XiCase xi_case() const { return xi_case_; }
    double alpha() const { return alpha_; }
    /// Constant multiplying |theta|^alpha * SV(1/|theta|) in the symmetric
    /// cases; in the two-sided cases the constant multiplying the L_r/zeta_r
    /// component.
    double xi_coefficient() const { return xi_coefficient_; }

private:
    friend CharFnExpansion build_expansion(const density::DensitySpec& spec);

    std::map<int, double> chi_coeffs_;  // j -> kappa_j / j!
    XiCase xi_case_ = XiCase::SymmetricNonEven;
    double alpha_ = 0.0;
    double xi_coefficient_ = 0.0;
    // two-sided machinery
    density::SlowlyVarying sv_r_ = density::SlowlyVarying::constant(1.0);
    density::SlowlyVarying sv_s_plus_ = density::SlowlyVarying::constant(1.0);
    bool has_s_component_ = false;
    bool symmetric_ = true;
};

CharFnExpansion build_expansion(const density::DensitySpec& spec);

}  // namespace heavytail::charfn

#endif
