#pragma once

// Iota expansions, cancellation, formal delta kernels, and the
// three-term/two-identity equivalence checker for the formal Jacobi
// identity.

#include "vcalc/rational_fn.hpp"
#include "vcalc/series.hpp"

#include <string>

namespace vcalc {

// The unique expansion of f into the iterated Laurent field given by `ord`.
inline ScalarSeries iota_expand(const RationalFn& f, const Ordering& ord, const Window& target) {
    return f.expand(ord, target);
}

// Recover K from h = f*K for exact nonzero f (cancellation).  Works for
// scalar- and operator-valued h alike.
template <class C>
Series<C> cancel_divide(const Series<C>& h, const ScalarSeries& f, const Window& target) {
    if (!f.exact || f.terms.empty())
        throw SeriesError("cancel_divide: factor must be exact nonzero");
    return divide(h, f, Hull::sum(h.hull, inverse_hull(f)), target);
}

// Kernel sum_n (cdom*vdom + csub*vsub)^n (ctop*vtop)^{-n-1}, expanded with
// nonnegative powers of vsub; this is (ctop*vtop)^{-1} delta((cdom*vdom +
// csub*vsub)/(ctop*vtop)) truncated to `target`.
ScalarSeries delta_kernel(const Ordering& ord, const QScalar& ctop, const std::string& vtop,
                          const QScalar& cdom, const std::string& vdom, const QScalar& csub,
                          const std::string& vsub, const Window& target);

// Kernel sum_k (c*z/w)^k = delta(c*z/w) truncated to `target`.
ScalarSeries delta_ratio_kernel(const Ordering& ord, const QScalar& c, const std::string& z,
                                const std::string& w, const Window& target);

// Substitution-route evaluation of Res_{xin} xin^{-1} delta((a*x+x0)/xin) F:
// equals F with xin replaced by a*x + x0.  The kernel-route equivalent is
// used as the independent cross-check in tests.
template <class C>
Series<C> delta_pair(const Series<C>& f, const std::string& var, const QScalar& a,
                     const std::string& vx, const std::string& vx0, const Ordering& out,
                     const Window& target) {
    return substitute(f, var, a, vx, QScalar(1), vx0, out, target);
}

struct JacobiReport {
    CompareResult three_term;   // delta-kernel identity
    CompareResult pair_ab;      // (x1-x2)^k A = (x1-x2)^k B
    CompareResult pair_ac;      // (x0+x2)^l A(x0+x2,x2) = (x0+x2)^l C
    bool pass() const {
        return three_term.pass() && pair_ab.pass() && pair_ac.pass();
    }
    bool equivalent() const {  // both routes agree on their verdicts
        return three_term.pass() == (pair_ab.pass() && pair_ac.pass());
    }
};

// A lives in ((x1))((x2)), B in ((x2))((x1)), C in ((x2))((x0)); the three
// orderings share variable *names* vx0, vx1, vx2.  Checks, within `target`
// (a window over (vx0, vx1, vx2) plus any extra variables of A), both the
// three-term delta identity and the (k, l) pair of product identities.
template <class C>
JacobiReport jacobi_check(const Series<C>& A, const Series<C>& B, const Series<C>& Cc,
                          const std::string& vx0, const std::string& vx1, const std::string& vx2,
                          int k, int l, const Window& target);

// ---- implementation ---------------------------------------------------------

template <class C>
JacobiReport jacobi_check(const Series<C>& A, const Series<C>& B, const Series<C>& Cc,
                          const std::string& vx0, const std::string& vx1, const std::string& vx2,
                          int k, int l, const Window& target) {
    JacobiReport rep;
    // ordering of the three-term comparison: extra vars of A first, then
    // x0, x1, x2 (the choice is representational only)
    std::vector<std::string> names;
    for (const auto& nm : A.ord.names())
        if (nm != vx1 && nm != vx2) names.push_back(nm);
    names.push_back(vx0);
    names.push_back(vx1);
    names.push_back(vx2);
    Ordering ord3(names);

    Series<C> A3 = lift(A, ord3);
    Series<C> B3 = lift(B, ord3);
    Series<C> C3 = lift(Cc, ord3);

    ScalarSeries K1 =
        delta_kernel(ord3, QScalar(1), vx0, QScalar(1), vx1, QScalar(-1), vx2, target);
    // x0^{-1} delta((x2-x1)/(-x0)) = -(-x0)^{-1} delta((x2-x1)/(-x0))
    ScalarSeries K2 = negate(
        delta_kernel(ord3, QScalar(-1), vx0, QScalar(1), vx2, QScalar(-1), vx1, target));
    ScalarSeries K3 =
        delta_kernel(ord3, QScalar(1), vx1, QScalar(1), vx2, QScalar(1), vx0, target);

    Series<C> lhs = sub(mul(K1, A3, target), mul(K2, B3, target));
    Series<C> rhs = mul(K3, C3, target);
    rep.three_term = compare(lhs, rhs, target);

    // (x1 - x2)^k A = (x1 - x2)^k B over (x1, x2) windows
    {
        std::map<ExpVec, QScalar> t;
        ExpVec e1(A.ord.size(), 0), e2(A.ord.size(), 0);
        e1[A.ord.index(vx1)] = 1;
        e2[A.ord.index(vx2)] = 1;
        t[e1] = QScalar(1);
        t[e2] = QScalar(-1);
        ScalarSeries p = ScalarSeries::from_terms(A.ord, std::move(t));
        ScalarSeries pk = ScalarSeries::constant(A.ord, QScalar(1));
        for (int i = 0; i < k; ++i) pk = mul_exact(pk, p);
        // target restricted to A's variables
        std::vector<int> lo, hi;
        for (const auto& nm : A.ord.names()) {
            int oi = ord3.index(nm);
            lo.push_back(target.lo[oi]);
            hi.push_back(target.hi[oi]);
        }
        Window tA(lo, hi);
        rep.pair_ab = compare(mul(pk, A, tA), mul(pk, lift(B, A.ord), tA), tA);
    }

    // (x0 + x2)^l A(x0+x2, x2) = (x0 + x2)^l C over (x0, x2)
    {
        std::vector<std::string> cn;
        for (const auto& nm : A.ord.names())
            if (nm != vx1) cn.push_back(nm);
        cn.push_back(vx0);
        Ordering ordc(cn);
        std::vector<int> lo, hi;
        for (const auto& nm : cn) {
            int oi = ord3.index(nm);
            lo.push_back(target.lo[oi]);
            hi.push_back(target.hi[oi]);
        }
        Window tC(lo, hi);
        // substituted A: x1 -> x0 + x2 with x0 dominant
        Series<C> Asub = substitute(A, vx1, QScalar(1), vx0, QScalar(1), vx2, ordc, tC);
        std::map<ExpVec, QScalar> t;
        ExpVec e0(ordc.size(), 0), e2(ordc.size(), 0);
        e0[ordc.index(vx0)] = 1;
        e2[ordc.index(vx2)] = 1;
        t[e0] = QScalar(1);
        t[e2] = QScalar(1);
        ScalarSeries p = ScalarSeries::from_terms(ordc, std::move(t));
        ScalarSeries pl = ScalarSeries::constant(ordc, QScalar(1));
        for (int i = 0; i < l; ++i) pl = mul_exact(pl, p);
        rep.pair_ac = compare(mul(pl, Asub, tC), mul(pl, lift(Cc, ordc), tC), tC);
    }
    return rep;
}

}  // namespace vcalc
