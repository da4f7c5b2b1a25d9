#include "vcalc/rational_fn.hpp"

#include <sstream>

namespace vcalc {

ScalarSeries DenFactor::materialize(const Ordering& ord) const {
    switch (kind) {
        case Kind::Var: {
            ExpVec e(ord.size(), 0);
            e[ord.index(vi)] = 1;
            return ScalarSeries::monomial(ord, e, QScalar(1));
        }
        case Kind::Linear: {
            std::map<ExpVec, QScalar> t;
            ExpVec a(ord.size(), 0), b(ord.size(), 0);
            a[ord.index(vi)] = 1;
            b[ord.index(vj)] = 1;
            t[a] = QScalar(1);
            t[b] = -alpha;
            return ScalarSeries::from_terms(ord, std::move(t));
        }
        case Kind::Opaque:
            return lift(poly, ord);
    }
    throw SeriesError("bad factor kind");
}

RationalFn RationalFn::one(const Ordering& vars) {
    return RationalFn(ScalarSeries::constant(vars, QScalar(1)));
}

RationalFn RationalFn::from_scalar(const Ordering& vars, const QScalar& c) {
    return RationalFn(ScalarSeries::constant(vars, c));
}

RationalFn RationalFn::linear_inverse(const Ordering& vars, const std::string& vi,
                                      const QScalar& alpha, const std::string& vj, int mult) {
    DenFactor f;
    f.kind = DenFactor::Kind::Linear;
    f.vi = vi;
    f.vj = vj;
    f.alpha = alpha;
    f.mult = mult;
    return RationalFn(ScalarSeries::constant(vars, QScalar(1)), {f});
}

RationalFn RationalFn::var_inverse(const Ordering& vars, const std::string& v, int mult) {
    DenFactor f;
    f.kind = DenFactor::Kind::Var;
    f.vi = v;
    f.mult = mult;
    return RationalFn(ScalarSeries::constant(vars, QScalar(1)), {f});
}

namespace {

bool same_factor(const DenFactor& a, const DenFactor& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case DenFactor::Kind::Var:
            return a.vi == b.vi;
        case DenFactor::Kind::Linear:
            return a.vi == b.vi && a.vj == b.vj && a.alpha == b.alpha;
        case DenFactor::Kind::Opaque:
            return a.poly.terms == b.poly.terms && a.poly.ord == b.poly.ord;
    }
    return false;
}

}  // namespace

RationalFn RationalFn::operator*(const RationalFn& o) const {
    RationalFn r;
    r.num_ = mul_exact(num_, lift(o.num_, num_.ord));
    r.den_ = den_;
    for (const auto& f : o.den_) {
        bool merged = false;
        for (auto& g : r.den_)
            if (same_factor(f, g)) {
                g.mult += f.mult;
                merged = true;
                break;
            }
        if (!merged) r.den_.push_back(f);
    }
    return r;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    // common denominator: union of factors at max multiplicity
    std::vector<DenFactor> all = den_;
    for (const auto& f : o.den_) {
        bool found = false;
        for (auto& g : all)
            if (same_factor(f, g)) {
                g.mult = std::max(g.mult, f.mult);
                found = true;
                break;
            }
        if (!found) all.push_back(f);
    }
    auto scale_num = [&](const RationalFn& x) {
        ScalarSeries n = x.num_;
        for (const auto& g : all) {
            int have = 0;
            for (const auto& f : x.den_)
                if (same_factor(f, g)) have = f.mult;
            for (int k = have; k < g.mult; ++k) n = mul_exact(n, g.materialize(n.ord));
        }
        return n;
    };
    RationalFn r;
    r.num_ = add(scale_num(*this), lift(scale_num(o), num_.ord));
    r.den_ = std::move(all);
    return r;
}

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num_ = negate(r.num_);
    return r;
}

RationalFn RationalFn::scaled(const QScalar& c) const {
    RationalFn r = *this;
    r.num_ = scale(c, r.num_);
    return r;
}

RationalFn RationalFn::derivative(const std::string& var) const {
    // d/dv (num / prod f_k^{m_k}) =
    //   [num' * prod f_k - num * sum_k m_k f'_k prod_{j!=k} f_j] / prod f_k^{m_k+1}
    const Ordering& ord = num_.ord;
    ScalarSeries prod_all = ScalarSeries::constant(ord, QScalar(1));
    for (const auto& f : den_) prod_all = mul_exact(prod_all, f.materialize(ord));
    ScalarSeries top = mul_exact(vcalc::derivative(num_, var), prod_all);
    for (size_t k = 0; k < den_.size(); ++k) {
        ScalarSeries fk = den_[k].materialize(ord);
        ScalarSeries dfk = vcalc::derivative(fk, var);
        if (dfk.terms.empty()) continue;
        ScalarSeries rest = ScalarSeries::constant(ord, QScalar(1));
        for (size_t j = 0; j < den_.size(); ++j)
            if (j != k) rest = mul_exact(rest, den_[j].materialize(ord));
        ScalarSeries piece =
            mul_exact(num_, mul_exact(scale(QScalar(Rational(den_[k].mult)), dfk), rest));
        top = sub(top, piece);
    }
    RationalFn r;
    r.num_ = std::move(top);
    r.den_ = den_;
    for (auto& f : r.den_) f.mult += 1;
    return r;
}

RationalFn RationalFn::substituted(const Ordering& out,
                                   const std::vector<ScalarSeries>& images) const {
    const Ordering& ord = num_.ord;
    auto subst_exact = [&](const ScalarSeries& p) {
        ScalarSeries acc = ScalarSeries::zero(out);
        for (const auto& [e, c] : p.terms) {
            ScalarSeries term = ScalarSeries::constant(out, c);
            for (int v = 0; v < ord.size(); ++v) {
                for (int k = 0; k < e[v]; ++k) term = mul_exact(term, images[v]);
                if (e[v] < 0) throw SeriesError("substituted: negative exponent in numerator");
            }
            acc = add(acc, term);
        }
        return acc;
    };
    RationalFn r;
    r.num_ = subst_exact(num_);
    for (const auto& f : den_) {
        DenFactor g;
        g.kind = DenFactor::Kind::Opaque;
        g.mult = f.mult;
        g.poly = subst_exact(f.materialize(ord));
        // keep shapes that survive as a plain variable or binomial
        if (g.poly.terms.size() == 1) {
            const auto& [e, c] = *g.poly.terms.begin();
            int nz = 0, slot = -1;
            for (int v = 0; v < out.size(); ++v)
                if (e[v] != 0) {
                    ++nz;
                    slot = v;
                }
            if (nz == 1 && e[slot] == 1 && c.is_one()) {
                g.kind = DenFactor::Kind::Var;
                g.vi = out.name(slot);
            }
        }
        r.den_.push_back(g);
    }
    return r;
}

ScalarSeries RationalFn::den_poly() const {
    ScalarSeries p = ScalarSeries::constant(num_.ord, QScalar(1));
    for (const auto& f : den_)
        for (int k = 0; k < f.mult; ++k) p = mul_exact(p, f.materialize(num_.ord));
    return p;
}

namespace {

// expansion of (vi - alpha*vj)^n in the field where `dom` is the dominant
// variable of the pair
ScalarSeries binomial_inverse(const Ordering& ord, const std::string& vi, const QScalar& alpha,
                              const std::string& vj, int n, const Window& target) {
    int ii = ord.index(vi), jj = ord.index(vj);
    bool vi_dominant = false;
    for (int v = 0; v < ord.size(); ++v) {
        if (v == ii) {
            vi_dominant = true;
            break;
        }
        if (v == jj) break;
    }
    ScalarSeries r;
    r.ord = ord;
    r.exact = false;
    r.window = target;
    r.hull = Hull(ord.size());
    // support line: e_i + e_j = n, subordinate exponent >= 0
    for (size_t m = 1; m < r.hull.lo.size(); ++m) {
        bool hasI = (m >> ii) & 1, hasJ = (m >> jj) & 1;
        if (hasI && hasJ) {
            r.hull.lo[m] = n;
            r.hull.hi[m] = n;
        } else if (!hasI && !hasJ) {
            r.hull.lo[m] = 0;
            r.hull.hi[m] = 0;
        } else {
            bool dom_side = (hasI && vi_dominant) || (hasJ && !vi_dominant);
            if (dom_side) {
                r.hull.lo[m] = kNegInf;
                r.hull.hi[m] = n;  // dominant exponent = n - t, t >= 0
            } else {
                r.hull.lo[m] = 0;
                r.hull.hi[m] = kPosInf;
            }
        }
    }
    // terms within the window
    int dom = vi_dominant ? ii : jj;
    int sbd = vi_dominant ? jj : ii;
    QScalar cdom = vi_dominant ? QScalar(1) : -alpha;
    QScalar csub = vi_dominant ? -alpha : QScalar(1);
    long t_lo = std::max(0, target.lo[sbd]);
    long t_hi = target.hi[sbd];
    for (long t = t_lo; t <= t_hi; ++t) {
        if (n >= 0 && t > n) break;
        long ed = n - t;
        if (ed < target.lo[dom] || ed > target.hi[dom]) continue;
        QScalar c = QScalar(binomial(n, t)) * cdom.pow(ed) * csub.pow(t);
        if (c.is_zero()) continue;
        ExpVec e(ord.size(), 0);
        e[dom] = static_cast<int>(ed);
        e[sbd] = static_cast<int>(t);
        r.terms.emplace(std::move(e), std::move(c));
    }
    return r;  // cert empty: every window cell is known
}

}  // namespace

ScalarSeries mul_chain(const std::vector<ScalarSeries>& factors, const Window& target) {
    if (factors.empty()) throw SeriesError("mul_chain: no factors");
    int n = factors.front().ord.size();
    ScalarSeries acc = factors.front();
    for (size_t k = 1; k < factors.size(); ++k) {
        // window for acc*factors[k]: what the remaining factors can still
        // shift into target, clipped by the intermediate's own hull
        Hull next_hull = Hull::sum(acc.hull, factors[k].hull);
        std::vector<int> w_lo(n), w_hi(n);
        for (int v = 0; v < n; ++v) {
            std::int64_t rl = 0, rh = 0;
            for (size_t j = k + 1; j < factors.size(); ++j) {
                rl = sat_add(rl, factors[j].hull.lo[size_t(1) << v]);
                rh = sat_add(rh, factors[j].hull.hi[size_t(1) << v]);
            }
            std::int64_t l = sat_add(target.lo[v], -rh);
            std::int64_t h = sat_add(target.hi[v], -rl);
            if (l <= kNegInf) l = next_hull.lo[size_t(1) << v];
            if (h >= kPosInf) h = next_hull.hi[size_t(1) << v];
            if (l <= kNegInf || h >= kPosInf)
                throw SeriesError("mul_chain: cannot bound intermediate window");
            w_lo[v] = static_cast<int>(l);
            w_hi[v] = static_cast<int>(std::max(l - 1, h));
        }
        acc = mul(acc, factors[k], Window(w_lo, w_hi));
    }
    return acc;
}

ScalarSeries RationalFn::expand(const Ordering& ord, const Window& target) const {
    // Plan the factor singleton-hull bounds first, so every factor can be
    // materialized on a window wide enough for all intermediate products.
    struct Plan {
        std::vector<std::int64_t> lo, hi;  // singleton bounds per variable
        std::function<ScalarSeries(const Window&)> make;
    };
    int n = ord.size();
    std::vector<Plan> plans;

    {
        Plan p;
        p.lo.assign(n, 0);
        p.hi.assign(n, 0);
        ScalarSeries numl = lift(num_, ord);
        for (int v = 0; v < n; ++v) {
            p.lo[v] = numl.hull.lo[size_t(1) << v];
            p.hi[v] = numl.hull.hi[size_t(1) << v];
        }
        p.make = [numl](const Window&) { return numl; };
        plans.push_back(std::move(p));
    }
    for (const auto& f : den_) {
        Plan p;
        p.lo.assign(n, 0);
        p.hi.assign(n, 0);
        switch (f.kind) {
            case DenFactor::Kind::Var: {
                int vi = ord.index(f.vi);
                ExpVec e(n, 0);
                e[vi] = -f.mult;
                p.lo[vi] = p.hi[vi] = -f.mult;
                ScalarSeries mono = ScalarSeries::monomial(ord, e, QScalar(1));
                p.make = [mono](const Window&) { return mono; };
                break;
            }
            case DenFactor::Kind::Linear: {
                int ii = ord.index(f.vi), jj = ord.index(f.vj);
                bool vi_dom = false;
                for (int v = 0; v < n; ++v) {
                    if (v == ii) {
                        vi_dom = true;
                        break;
                    }
                    if (v == jj) break;
                }
                int dom = vi_dom ? ii : jj, sbd = vi_dom ? jj : ii;
                p.lo[dom] = kNegInf;
                p.hi[dom] = -f.mult;
                p.lo[sbd] = 0;
                p.hi[sbd] = kPosInf;
                auto vi2 = f.vi;
                auto alpha = f.alpha;
                auto vj2 = f.vj;
                int m = f.mult;
                p.make = [ord, vi2, alpha, vj2, m](const Window& w) {
                    return binomial_inverse(ord, vi2, alpha, vj2, -m, w);
                };
                break;
            }
            case DenFactor::Kind::Opaque: {
                ScalarSeries pl = lift(f.poly, ord);
                Hull ih = inverse_hull(pl);
                // power of an inverse: singleton bounds scale with multiplicity
                for (int v = 0; v < n; ++v) {
                    std::int64_t l = ih.lo[size_t(1) << v], h = ih.hi[size_t(1) << v];
                    p.lo[v] = (l <= kNegInf) ? kNegInf : l * f.mult;
                    p.hi[v] = (h >= kPosInf) ? kPosInf : h * f.mult;
                }
                int m = f.mult;
                p.make = [pl, ih, m](const Window& w) {
                    ScalarSeries one = ScalarSeries::constant(pl.ord, QScalar(1));
                    ScalarSeries q = divide(one, pl, ih, w);
                    Hull hk = ih;
                    for (int k = 1; k < m; ++k) {
                        hk = Hull::sum(hk, ih);
                        q = divide(q, pl, hk, w);
                    }
                    return q;
                };
                break;
            }
        }
        plans.push_back(std::move(p));
    }

    // per-factor window: target minus what the other factors contribute
    std::vector<ScalarSeries> chain;
    for (size_t k = 0; k < plans.size(); ++k) {
        std::vector<int> lo(n), hi(n);
        for (int v = 0; v < n; ++v) {
            std::int64_t ol = 0, oh = 0;
            for (size_t j = 0; j < plans.size(); ++j) {
                if (j == k) continue;
                ol = sat_add(ol, plans[j].lo[v]);
                oh = sat_add(oh, plans[j].hi[v]);
            }
            std::int64_t l = sat_add(target.lo[v], -oh);
            std::int64_t h = sat_add(target.hi[v], -ol);
            if (l <= kNegInf) l = plans[k].lo[v];
            if (h >= kPosInf) h = plans[k].hi[v];
            if (l <= kNegInf || h >= kPosInf)
                throw SeriesError("expand: cannot bound factor window");
            lo[v] = static_cast<int>(l);
            hi[v] = static_cast<int>(std::max(l - 1, h));
        }
        chain.push_back(plans[k].make(Window(lo, hi)));
    }
    if (chain.size() == 1) return chain.front();
    return mul_chain(chain, target);
}

std::string RationalFn::str() const {
    std::ostringstream os;
    os << "(" << to_string(num_) << ")";
    for (const auto& f : den_) {
        os << " / ";
        switch (f.kind) {
            case DenFactor::Kind::Var:
                os << f.vi;
                break;
            case DenFactor::Kind::Linear:
                os << "(" << f.vi << " - (" << f.alpha.str() << ")*" << f.vj << ")";
                break;
            case DenFactor::Kind::Opaque:
                os << "(" << to_string(f.poly) << ")";
                break;
        }
        if (f.mult != 1) os << "^" << f.mult;
    }
    return os.str();
}

}  // namespace vcalc
