#pragma once

// Truncated iterated Laurent series in ordered formal variables.
//
// A Series<C> stores sparse coefficients inside a per-variable exponent
// window together with a certification bitmap: a cell is certified when the
// stored coefficient (absent = zero) provably equals the true coefficient of
// the represented object.  Outside the window, a coefficient is known only
// when it falls outside the support hull (then it is zero) or when the
// series is exact (a Laurent polynomial).  All operations propagate
// certification conservatively: reported coefficients are exact, never
// guessed.
//
// The support hull records, for every nonempty subset S of the variables,
// bounds on sum_{v in S} e_v over the true support.  Hulls are what make
// product certification decidable: they bound the set of exponent splits
// that can contribute to a target coefficient.

#include "vcalc/scalars.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vcalc {

using ExpVec = std::vector<int>;

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Ordering {
  public:
    Ordering() = default;
    explicit Ordering(std::vector<std::string> vars) : vars_(std::move(vars)) {
        if (vars_.size() > 6) throw SeriesError("too many variables");
    }
    int size() const { return static_cast<int>(vars_.size()); }
    const std::string& name(int i) const { return vars_[i]; }
    const std::vector<std::string>& names() const { return vars_; }
    int index(const std::string& v) const {
        for (int i = 0; i < size(); ++i)
            if (vars_[i] == v) return i;
        throw SeriesError("unknown variable " + v);
    }
    bool contains(const std::string& v) const {
        for (const auto& n : vars_)
            if (n == v) return true;
        return false;
    }
    bool operator==(const Ordering& o) const { return vars_ == o.vars_; }

  private:
    std::vector<std::string> vars_;
};

// Per-variable exponent bounds.  lo > hi in any variable means empty.
struct Window {
    std::vector<int> lo, hi;

    Window() = default;
    Window(std::vector<int> l, std::vector<int> h) : lo(std::move(l)), hi(std::move(h)) {}
    static Window cube(int n, int l, int h) {
        return Window(std::vector<int>(n, l), std::vector<int>(n, h));
    }
    int size() const { return static_cast<int>(lo.size()); }
    bool empty() const {
        for (int i = 0; i < size(); ++i)
            if (lo[i] > hi[i]) return true;
        return false;
    }
    bool contains(const ExpVec& e) const {
        for (int i = 0; i < size(); ++i)
            if (e[i] < lo[i] || e[i] > hi[i]) return false;
        return true;
    }
    long cells() const {
        long n = 1;
        for (int i = 0; i < size(); ++i) n *= std::max(0, hi[i] - lo[i] + 1);
        return n;
    }
    long cell_index(const ExpVec& e) const {
        long idx = 0;
        for (int i = 0; i < size(); ++i) idx = idx * (hi[i] - lo[i] + 1) + (e[i] - lo[i]);
        return idx;
    }
    void for_each(const std::function<void(const ExpVec&)>& f) const;
    static Window intersect(const Window& a, const Window& b);
    std::string str() const;
};

inline constexpr std::int64_t kNegInf = INT64_MIN / 4;
inline constexpr std::int64_t kPosInf = INT64_MAX / 4;

inline std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a <= kNegInf || b <= kNegInf) return kNegInf;
    if (a >= kPosInf || b >= kPosInf) return kPosInf;
    return a + b;
}

// Support hull: bounds on subset-sums of exponents over the true support.
struct Hull {
    int nvars = 0;
    std::vector<std::int64_t> lo, hi;  // indexed by subset bitmask; entry 0 unused

    Hull() = default;
    explicit Hull(int n) : nvars(n), lo(size_t(1) << n, kNegInf), hi(size_t(1) << n, kPosInf) {}

    static Hull empty(int n) {  // hull of the zero series
        Hull h(n);
        for (size_t m = 1; m < h.lo.size(); ++m) {
            h.lo[m] = kPosInf;
            h.hi[m] = kNegInf;
        }
        return h;
    }
    bool is_empty() const { return nvars > 0 && lo[1] > hi[1]; }

    bool contains(const ExpVec& e) const {
        for (size_t m = 1; m < lo.size(); ++m) {
            std::int64_t s = 0;
            for (int v = 0; v < nvars; ++v)
                if (m & (size_t(1) << v)) s += e[v];
            if (s < lo[m] || s > hi[m]) return false;
        }
        return true;
    }

    static Hull from_support(int n, const std::map<ExpVec, int>&) = delete;
    static Hull sum(const Hull& a, const Hull& b);    // Minkowski sum
    static Hull unite(const Hull& a, const Hull& b);  // union bound
    Hull shifted(const ExpVec& d) const;
    void clamp(size_t mask, std::int64_t l, std::int64_t h) {
        lo[mask] = std::max(lo[mask], l);
        hi[mask] = std::min(hi[mask], h);
    }

    template <class It>  // iterators over ExpVec-keyed pairs
    static Hull from_points(int n, It begin, It end) {
        if (begin == end) return Hull::empty(n);
        Hull h(n);
        for (size_t m = 1; m < h.lo.size(); ++m) {
            std::int64_t mn = kPosInf, mx = kNegInf;
            for (It it = begin; it != end; ++it) {
                const ExpVec& e = it->first;
                std::int64_t s = 0;
                for (int v = 0; v < n; ++v)
                    if (m & (size_t(1) << v)) s += e[v];
                mn = std::min(mn, s);
                mx = std::max(mx, s);
            }
            h.lo[m] = mn;
            h.hi[m] = mx;
        }
        return h;
    }
};

template <class C>
struct CoeffOps;

template <>
struct CoeffOps<QScalar> {
    static bool is_zero(const QScalar& c) { return c.is_zero(); }
    static QScalar scale(const QScalar& s, const QScalar& c) { return s * c; }
    static std::string str(const QScalar& c) { return c.str(); }
};

template <class C>
class Series {
  public:
    Ordering ord;
    Window window;           // certified-knowledge region (when not exact)
    bool exact = false;      // true: `terms` is the complete support
    std::map<ExpVec, C> terms;
    std::vector<bool> cert;  // one bit per window cell; empty means all-certified
    Hull hull;

    Series() = default;

    static Series zero(const Ordering& o) {
        Series s;
        s.ord = o;
        s.exact = true;
        s.hull = Hull::empty(o.size());
        s.window = Window::cube(o.size(), 0, 0);
        return s;
    }

    static Series from_terms(const Ordering& o, std::map<ExpVec, C> t) {
        Series s;
        s.ord = o;
        s.exact = true;
        for (auto it = t.begin(); it != t.end();) {
            if (CoeffOps<C>::is_zero(it->second))
                it = t.erase(it);
            else
                ++it;
        }
        s.terms = std::move(t);
        s.hull = Hull::from_points(o.size(), s.terms.begin(), s.terms.end());
        s.window = s.bounding_window();
        return s;
    }

    static Series monomial(const Ordering& o, const ExpVec& e, C c) {
        std::map<ExpVec, C> t;
        if (!CoeffOps<C>::is_zero(c)) t.emplace(e, std::move(c));
        return from_terms(o, std::move(t));
    }

    static Series constant(const Ordering& o, C c) {
        return monomial(o, ExpVec(o.size(), 0), std::move(c));
    }

    Window bounding_window() const {
        int n = ord.size();
        Window w = Window::cube(n, 0, 0);
        bool first = true;
        for (const auto& [e, c] : terms) {
            for (int i = 0; i < n; ++i) {
                if (first || e[i] < w.lo[i]) w.lo[i] = e[i];
                if (first || e[i] > w.hi[i]) w.hi[i] = e[i];
            }
            first = false;
        }
        return w;
    }

    const C* coeff_ptr(const ExpVec& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? nullptr : &it->second;
    }

    C coeff(const ExpVec& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? C() : it->second;
    }

    bool certified_at(const ExpVec& e) const {
        if (exact) return true;
        if (!hull.contains(e)) return true;  // provably zero
        if (!window.contains(e)) return false;
        if (cert.empty()) return true;
        return cert[window.cell_index(e)];
    }

    bool fully_certified_on(const Window& w) const {
        bool ok = true;
        w.for_each([&](const ExpVec& e) { ok = ok && certified_at(e); });
        return ok;
    }

    void add_term(const ExpVec& e, const C& c) {
        if (CoeffOps<C>::is_zero(c)) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (CoeffOps<C>::is_zero(it->second)) terms.erase(it);
        }
    }
};

using ScalarSeries = Series<QScalar>;

// ---- non-template helpers -------------------------------------------------

// true iff e1 strictly precedes e2 in dominance order: later variables weigh
// more, and within a variable a lower exponent dominates.  The leading term
// of an exact series under this order is the one whose inverse exists in
// the iterated Laurent field of its ordering.
bool dominance_less(const ExpVec& e1, const ExpVec& e2);
ExpVec leading_term(const ScalarSeries& d);

// Hull of 1/d for exact nonzero d: a cone at the inverse of the leading term.
Hull inverse_hull(const ScalarSeries& d);

// Bounding box of { i : i in a, e - i in b }, tightened by propagating the
// subset-sum constraints of both hulls.  nullopt when some coordinate cannot
// be bounded (the split set may be infinite).
std::optional<Window> split_box(const Hull& a, const Hull& b, const ExpVec& e);

std::string to_string(const ScalarSeries& s);
std::ostream& operator<<(std::ostream& os, const ScalarSeries& s);

// ---- operations ------------------------------------------------------------

template <class C>
Series<C> lift(const Series<C>& a, const Ordering& target);

template <class C>
Series<C> add(const Series<C>& a, const Series<C>& b);

template <class C>
Series<C> negate(Series<C> a) {
    for (auto& [e, c] : a.terms) c = -c;
    return a;
}

template <class C>
Series<C> sub(const Series<C>& a, const Series<C>& b) {
    return add(a, negate(b));
}

template <class C>
Series<C> scale(const QScalar& s, Series<C> a) {
    if (s.is_zero()) return Series<C>::zero(a.ord);
    for (auto& [e, c] : a.terms) c = CoeffOps<C>::scale(s, c);
    return a;
}

template <class C>
Series<C> mul_exact(const ScalarSeries& a, const Series<C>& b);

// Product a*b with certified coefficients inside `target`.
template <class C>
Series<C> mul(const ScalarSeries& a, const Series<C>& b, const Window& target);

template <class C>
Series<C> derivative(const Series<C>& a, const std::string& var);

template <class C>
Series<C> rescale_var(const Series<C>& a, const std::string& var, const QScalar& alpha);

template <class C>
Series<C> coeff_slice(const Series<C>& a, const std::string& var, int k);

template <class C>
Series<C> rename_var(Series<C> a, const std::string& from, const std::string& to);

// Substitution var -> cdom*vdom + csub*vsub, expanded by the binomial
// convention: nonnegative integral powers of the *subordinate* variable
// vsub.  vdom / vsub may be fresh or already present (exponents then add).
template <class C>
Series<C> substitute(const Series<C>& f, const std::string& var, const QScalar& cdom,
                     const std::string& vdom, const QScalar& csub, const std::string& vsub,
                     const Ordering& out, const Window& target);

template <class C>
Series<C> residue(const Series<C>& a, const std::string& var) {
    if (!a.ord.contains(var)) throw SeriesError("residue: variable " + var + " absent");
    if (!a.exact) {
        int vi = a.ord.index(var);
        if (a.window.lo[vi] > -1 || a.window.hi[vi] < -1)
            throw SeriesError("window too small for residue in " + var);
    }
    return coeff_slice(a, var, -1);
}

struct CompareResult {
    bool equal_on_certified = true;
    long cells_checked = 0;
    long cells_uncertified = 0;
    std::optional<ExpVec> first_mismatch;

    bool fully_certified() const { return cells_uncertified == 0; }
    bool pass() const { return equal_on_certified; }
};

template <class C>
CompareResult compare(const Series<C>& a, const Series<C>& b, const Window& target);

// Quotient h / d with d exact nonzero.  `quot_hull` must be a valid support
// superset of the quotient; use Hull::sum(h.hull, inverse_hull(d)).
template <class C>
Series<C> divide(const Series<C>& h, const ScalarSeries& d, const Hull& quot_hull,
                 const Window& target);

// ---- template implementations ----------------------------------------------

template <class C>
Series<C> lift(const Series<C>& a, const Ordering& target) {
    int n = target.size();
    std::vector<int> pos(n, -1);  // target slot -> source slot
    for (int i = 0; i < a.ord.size(); ++i) pos[target.index(a.ord.name(i))] = i;
    Series<C> r;
    r.ord = target;
    r.exact = a.exact;
    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        if (pos[i] >= 0) {
            lo[i] = a.window.lo[pos[i]];
            hi[i] = a.window.hi[pos[i]];
        } else {
            lo[i] = hi[i] = 0;
        }
    }
    r.window = Window(lo, hi);
    for (const auto& [e, c] : a.terms) {
        ExpVec t(n, 0);
        for (int i = 0; i < n; ++i)
            if (pos[i] >= 0) t[i] = e[pos[i]];
        r.terms.emplace(std::move(t), c);
    }
    r.hull = Hull(n);
    if (a.hull.is_empty()) {
        r.hull = Hull::empty(n);
    } else {
        for (size_t m = 1; m < r.hull.lo.size(); ++m) {
            size_t src = 0;
            for (int i = 0; i < n; ++i)
                if ((m & (size_t(1) << i)) && pos[i] >= 0) src |= size_t(1) << pos[i];
            if (src == 0) {
                r.hull.lo[m] = 0;
                r.hull.hi[m] = 0;
            } else {
                r.hull.lo[m] = a.hull.lo[src];
                r.hull.hi[m] = a.hull.hi[src];
            }
        }
    }
    if (!a.exact) {
        r.cert.assign(std::max<long>(r.window.cells(), 0), false);
        r.window.for_each([&](const ExpVec& e) {
            ExpVec s(a.ord.size());
            for (int i = 0; i < n; ++i)
                if (pos[i] >= 0) s[pos[i]] = e[i];
            r.cert[r.window.cell_index(e)] = a.certified_at(s);
        });
    }
    return r;
}

template <class C>
Series<C> add(const Series<C>& a, const Series<C>& b) {
    if (!(a.ord == b.ord)) throw SeriesError("ordering mismatch in add");
    Series<C> r;
    r.ord = a.ord;
    r.hull = Hull::unite(a.hull, b.hull);
    if (a.exact && b.exact) {
        r.exact = true;
        r.terms = a.terms;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        r.window = r.bounding_window();
        return r;
    }
    r.exact = false;
    r.window = a.exact ? b.window : (b.exact ? a.window : Window::intersect(a.window, b.window));
    r.cert.assign(r.window.cells(), false);
    r.window.for_each([&](const ExpVec& e) {
        bool ok = a.certified_at(e) && b.certified_at(e);
        r.cert[r.window.cell_index(e)] = ok;
        if (ok) {
            C v = a.coeff(e) + b.coeff(e);
            if (!CoeffOps<C>::is_zero(v)) r.terms.emplace(e, std::move(v));
        }
    });
    return r;
}

template <class C>
Series<C> mul_exact(const ScalarSeries& a, const Series<C>& b) {
    if (!(a.ord == b.ord)) throw SeriesError("ordering mismatch in mul");
    if (!a.exact || !b.exact) throw SeriesError("mul_exact requires exact factors");
    Series<C> r;
    r.ord = a.ord;
    r.exact = true;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            ExpVec e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, CoeffOps<C>::scale(ca, cb));
        }
    r.hull = Hull::sum(a.hull, b.hull);
    r.window = r.bounding_window();
    return r;
}

template <class C>
Series<C> mul(const ScalarSeries& a, const Series<C>& b, const Window& target) {
    if (!(a.ord == b.ord)) throw SeriesError("ordering mismatch in mul");
    if (a.exact && b.exact) return mul_exact(a, b);
    int n = a.ord.size();
    Series<C> r;
    r.ord = a.ord;
    r.exact = false;
    r.window = target;
    r.hull = Hull::sum(a.hull, b.hull);
    r.cert.assign(target.cells(), false);

    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            ExpVec e(n);
            for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            if (target.contains(e)) r.add_term(e, CoeffOps<C>::scale(ca, cb));
        }

    target.for_each([&](const ExpVec& e) {
        if (!r.hull.contains(e)) {
            r.cert[target.cell_index(e)] = true;
            return;
        }
        bool ok = true;
        if (a.exact) {
            ExpVec j(n);
            for (const auto& [ea, ca] : a.terms) {
                for (int i = 0; i < n; ++i) j[i] = e[i] - ea[i];
                if (!b.certified_at(j)) {
                    ok = false;
                    break;
                }
            }
        } else if (b.exact) {
            ExpVec j(n);
            for (const auto& [eb, cb] : b.terms) {
                for (int i = 0; i < n; ++i) j[i] = e[i] - eb[i];
                if (!a.certified_at(j)) {
                    ok = false;
                    break;
                }
            }
        } else {
            auto cand = split_box(a.hull, b.hull, e);
            if (!cand) {
                ok = false;  // cannot enumerate contributors
            } else if (!cand->empty()) {
                ExpVec j(n);
                cand->for_each([&](const ExpVec& i2) {
                    if (!ok) return;
                    if (!a.hull.contains(i2)) return;
                    for (int v = 0; v < n; ++v) j[v] = e[v] - i2[v];
                    if (!b.hull.contains(j)) return;
                    if (!a.certified_at(i2) || !b.certified_at(j)) ok = false;
                });
            }
        }
        r.cert[target.cell_index(e)] = ok;
    });
    for (auto it = r.terms.begin(); it != r.terms.end();) {
        if (!r.cert[target.cell_index(it->first)])
            it = r.terms.erase(it);
        else
            ++it;
    }
    return r;
}

template <class C>
Series<C> derivative(const Series<C>& a, const std::string& var) {
    int vi = a.ord.index(var);
    Series<C> r;
    r.ord = a.ord;
    r.exact = a.exact;
    for (const auto& [e, c] : a.terms) {
        if (e[vi] == 0) continue;
        ExpVec t = e;
        t[vi] -= 1;
        r.add_term(t, CoeffOps<C>::scale(QScalar(Rational(e[vi])), c));
    }
    ExpVec d(a.ord.size(), 0);
    d[vi] = -1;
    r.hull = a.hull.shifted(d);
    if (a.exact) {
        r.window = r.bounding_window();
        return r;
    }
    std::vector<int> lo = a.window.lo, hi = a.window.hi;
    lo[vi] -= 1;
    hi[vi] -= 1;
    r.window = Window(lo, hi);
    r.cert.assign(r.window.cells(), false);
    r.window.for_each([&](const ExpVec& e) {
        ExpVec s = e;
        s[vi] += 1;
        r.cert[r.window.cell_index(e)] = a.certified_at(s);
    });
    return r;
}

template <class C>
Series<C> rescale_var(const Series<C>& a, const std::string& var, const QScalar& alpha) {
    if (alpha.is_zero()) throw SeriesError("rescale by zero");
    int vi = a.ord.index(var);
    Series<C> r = a;
    r.terms.clear();
    for (const auto& [e, c] : a.terms)
        r.terms.emplace(e, CoeffOps<C>::scale(alpha.pow(e[vi]), c));
    return r;
}

template <class C>
Series<C> coeff_slice(const Series<C>& a, const std::string& var, int k) {
    int vi = a.ord.index(var);
    int n = a.ord.size();
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        if (i != vi) names.push_back(a.ord.name(i));
    Series<C> r;
    r.ord = Ordering(names);
    r.exact = a.exact;
    for (const auto& [e, c] : a.terms) {
        if (e[vi] != k) continue;
        ExpVec t;
        t.reserve(n - 1);
        for (int i = 0; i < n; ++i)
            if (i != vi) t.push_back(e[i]);
        r.terms.emplace(std::move(t), c);
    }
    r.hull = Hull(n - 1);
    if (a.hull.is_empty()) {
        r.hull = Hull::empty(n - 1);
    } else {
        for (size_t m = 1; m < r.hull.lo.size(); ++m) {
            size_t src = 0;
            int ti = 0;
            for (int i = 0; i < n; ++i) {
                if (i == vi) continue;
                if (m & (size_t(1) << ti)) src |= size_t(1) << i;
                ++ti;
            }
            std::int64_t l = a.hull.lo[src], h = a.hull.hi[src];
            size_t srcv = src | (size_t(1) << vi);
            l = std::max(l, sat_add(a.hull.lo[srcv], -k));
            h = std::min(h, sat_add(a.hull.hi[srcv], -k));
            r.hull.lo[m] = l;
            r.hull.hi[m] = h;
        }
    }
    if (a.exact) {
        r.window = r.bounding_window();
        return r;
    }
    std::vector<int> lo, hi;
    for (int i = 0; i < n; ++i)
        if (i != vi) {
            lo.push_back(a.window.lo[i]);
            hi.push_back(a.window.hi[i]);
        }
    r.window = Window(lo, hi);
    r.cert.assign(r.window.cells(), false);
    r.window.for_each([&](const ExpVec& e) {
        ExpVec s;
        s.reserve(n);
        int ti = 0;
        for (int i = 0; i < n; ++i) {
            if (i == vi)
                s.push_back(k);
            else
                s.push_back(e[ti++]);
        }
        r.cert[r.window.cell_index(e)] = a.certified_at(s);
    });
    return r;
}

template <class C>
Series<C> rename_var(Series<C> a, const std::string& from, const std::string& to) {
    std::vector<std::string> names = a.ord.names();
    for (auto& nm : names)
        if (nm == from) nm = to;
    a.ord = Ordering(names);
    return a;
}

template <class C>
Series<C> substitute(const Series<C>& f, const std::string& var, const QScalar& cdom,
                     const std::string& vdom, const QScalar& csub, const std::string& vsub,
                     const Ordering& out, const Window& target) {
    if (cdom.is_zero()) throw SeriesError("substitute: zero dominant coefficient");
    if (vdom == vsub) throw SeriesError("substitute: identical target variables");
    int fvi = f.ord.index(var);
    int fn = f.ord.size();
    int on = out.size();
    std::vector<int> fslot_to_out(fn, -1);
    for (int i = 0; i < fn; ++i)
        if (i != fvi) fslot_to_out[i] = out.index(f.ord.name(i));
    int odom = out.index(vdom);
    int osub = out.index(vsub);
    bool dom_was = (vdom != var) && f.ord.contains(vdom);
    bool sub_was = (vsub != var) && f.ord.contains(vsub);
    int fdom = dom_was ? f.ord.index(vdom) : -1;
    int fsub = sub_was ? f.ord.index(vsub) : -1;

    Series<C> r;
    r.ord = out;
    r.exact = false;
    r.window = target;
    r.cert.assign(target.cells(), false);

    // hull of the result under the substitution, mask by mask
    r.hull = Hull(on);
    if (f.hull.is_empty()) {
        r.hull = Hull::empty(on);
    } else {
        for (size_t m = 1; m < r.hull.lo.size(); ++m) {
            bool mdom = (m >> odom) & 1, msub = (m >> osub) & 1;
            size_t src = 0;
            for (int i = 0; i < fn; ++i)
                if (i != fvi && fslot_to_out[i] >= 0 && ((m >> fslot_to_out[i]) & 1))
                    src |= size_t(1) << i;
            if (dom_was && mdom) src |= size_t(1) << fdom;
            if (sub_was && msub) src |= size_t(1) << fsub;
            std::int64_t l, h;
            if (mdom && msub) {
                size_t s2 = src | (size_t(1) << fvi);
                l = f.hull.lo[s2];
                h = f.hull.hi[s2];
            } else if (!mdom && !msub) {
                l = src ? f.hull.lo[src] : 0;
                h = src ? f.hull.hi[src] : 0;
            } else if (mdom) {
                // contributes n - i with i >= 0: bounded above by n's bound
                size_t s2 = src | (size_t(1) << fvi);
                l = kNegInf;
                h = f.hull.hi[s2];
            } else {
                // contributes i >= 0
                l = src ? f.hull.lo[src] : 0;
                h = kPosInf;
            }
            r.hull.lo[m] = l;
            r.hull.hi[m] = h;
        }
    }

    target.for_each([&](const ExpVec& t) {
        long i_lo, i_hi;
        if (sub_was) {
            // e_sub + i = t[osub] with e_sub in the hull range
            std::int64_t l = f.hull.lo[size_t(1) << fsub];
            if (l <= kNegInf) return;  // cannot bound contributions
            i_lo = 0;
            i_hi = t[osub] - static_cast<long>(l);
        } else {
            i_lo = i_hi = t[osub];  // fresh subordinate: exponent is i itself
        }
        i_lo = std::max<long>(i_lo, 0);
        if (i_hi < i_lo) {
            r.cert[target.cell_index(t)] = true;  // no contribution possible
            return;
        }
        bool ok = true;
        C acc{};
        bool any = false;
        for (long i = i_lo; i <= i_hi && ok; ++i) {
            long esub = sub_was ? t[osub] - i : 0;
            long n_lo, n_hi;
            if (dom_was) {
                std::int64_t dl = f.hull.lo[size_t(1) << fdom];
                std::int64_t dh = f.hull.hi[size_t(1) << fdom];
                std::int64_t vl = f.hull.lo[size_t(1) << fvi];
                std::int64_t vh = f.hull.hi[size_t(1) << fvi];
                // e_dom = t[odom] - (n - i)  =>  n = t[odom] + i - e_dom
                std::int64_t a1 = std::max(vl, sat_add(sat_add(t[odom], i), -dh));
                std::int64_t b1 = std::min(vh, sat_add(sat_add(t[odom], i), -dl));
                if (a1 > b1) continue;
                if (a1 <= kNegInf || b1 >= kPosInf) {
                    ok = false;
                    break;
                }
                n_lo = static_cast<long>(a1);
                n_hi = static_cast<long>(b1);
            } else {
                n_lo = n_hi = t[odom] + i;
            }
            for (long nn = n_lo; nn <= n_hi && ok; ++nn) {
                if (nn >= 0 && i > nn) continue;  // binom(n,i) = 0
                ExpVec e(fn, 0);
                e[fvi] = static_cast<int>(nn);
                for (int fi = 0; fi < fn; ++fi) {
                    if (fi == fvi) continue;
                    long val = t[fslot_to_out[fi]];
                    if (fi == fdom) val = t[odom] - (nn - i);
                    if (fi == fsub) val = esub;
                    e[fi] = static_cast<int>(val);
                }
                if (!f.hull.contains(e)) continue;
                if (!f.certified_at(e)) {
                    ok = false;
                    break;
                }
                const C* p = f.coeff_ptr(e);
                if (p) {
                    QScalar factor = QScalar(binomial(nn, i)) * cdom.pow(nn - i) * csub.pow(i);
                    if (!factor.is_zero()) {
                        C contrib = CoeffOps<C>::scale(factor, *p);
                        if (!CoeffOps<C>::is_zero(contrib)) {
                            if (!any) {
                                acc = std::move(contrib);
                                any = true;
                            } else {
                                acc = acc + contrib;
                            }
                        }
                    }
                }
            }
        }
        if (ok) {
            r.cert[target.cell_index(t)] = true;
            if (any && !CoeffOps<C>::is_zero(acc)) r.terms.emplace(t, std::move(acc));
        }
    });
    return r;
}

template <class C>
CompareResult compare(const Series<C>& a, const Series<C>& b, const Window& target) {
    if (!(a.ord == b.ord)) throw SeriesError("ordering mismatch in compare");
    CompareResult res;
    target.for_each([&](const ExpVec& e) {
        ++res.cells_checked;
        if (!a.certified_at(e) || !b.certified_at(e)) {
            ++res.cells_uncertified;
            return;
        }
        const C* pa = a.coeff_ptr(e);
        const C* pb = b.coeff_ptr(e);
        bool eq;
        if (!pa && !pb)
            eq = true;
        else if (pa && pb)
            eq = (*pa == *pb);
        else if (pa)
            eq = CoeffOps<C>::is_zero(*pa);
        else
            eq = CoeffOps<C>::is_zero(*pb);
        if (!eq) {
            res.equal_on_certified = false;
            if (!res.first_mismatch) res.first_mismatch = e;
        }
    });
    return res;
}

template <class C>
Series<C> divide(const Series<C>& h, const ScalarSeries& d, const Hull& quot_hull,
                 const Window& target) {
    if (!(h.ord == d.ord)) throw SeriesError("ordering mismatch in divide");
    if (!d.exact || d.terms.empty()) throw SeriesError("divide: divisor must be exact nonzero");
    int n = h.ord.size();
    ExpVec lead = leading_term(d);
    QScalar clead_inv = d.coeff(lead).inverse();

    Series<C> r;
    r.ord = h.ord;
    r.exact = false;
    r.window = target;
    r.hull = quot_hull;
    r.cert.assign(target.cells(), false);

    std::vector<ExpVec> cells;
    cells.reserve(target.cells());
    target.for_each([&](const ExpVec& e) { cells.push_back(e); });
    std::sort(cells.begin(), cells.end(), dominance_less);

    for (const ExpVec& e : cells) {
        if (!quot_hull.contains(e)) {
            r.cert[target.cell_index(e)] = true;
            continue;
        }
        ExpVec he(n);
        for (int i = 0; i < n; ++i) he[i] = e[i] + lead[i];
        if (!h.certified_at(he)) continue;
        bool ok = true;
        C acc = h.coeff(he);
        bool any = !CoeffOps<C>::is_zero(acc);
        for (const auto& [m, cm] : d.terms) {
            if (m == lead) continue;
            ExpVec ge(n);
            for (int i = 0; i < n; ++i) ge[i] = e[i] + lead[i] - m[i];
            if (!quot_hull.contains(ge)) continue;
            if (!target.contains(ge) || !r.cert[target.cell_index(ge)]) {
                ok = false;
                break;
            }
            const C* g = r.coeff_ptr(ge);
            if (g) {
                C contrib = CoeffOps<C>::scale(-cm, *g);
                if (!any) {
                    acc = std::move(contrib);
                    any = true;
                } else {
                    acc = acc + contrib;
                }
            }
        }
        if (!ok) continue;
        r.cert[target.cell_index(e)] = true;
        if (any) {
            C v = CoeffOps<C>::scale(clead_inv, acc);
            if (!CoeffOps<C>::is_zero(v)) r.terms.emplace(e, std::move(v));
        }
    }
    return r;
}

}  // namespace vcalc
