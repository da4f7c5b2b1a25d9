#include "vcalc/series.hpp"

#include <sstream>

namespace vcalc {

void Window::for_each(const std::function<void(const ExpVec&)>& f) const {
    if (empty()) return;
    int n = size();
    ExpVec e(lo.begin(), lo.end());
    for (;;) {
        f(e);
        int i = n - 1;
        while (i >= 0 && ++e[i] > hi[i]) e[i--] = lo[i];
        if (i < 0) break;
    }
}

Window Window::intersect(const Window& a, const Window& b) {
    Window r;
    r.lo.resize(a.size());
    r.hi.resize(a.size());
    for (int i = 0; i < a.size(); ++i) {
        r.lo[i] = std::max(a.lo[i], b.lo[i]);
        r.hi[i] = std::min(a.hi[i], b.hi[i]);
    }
    return r;
}

std::string Window::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < size(); ++i) {
        if (i) os << ", ";
        os << lo[i] << ".." << hi[i];
    }
    os << "]";
    return os.str();
}

Hull Hull::sum(const Hull& a, const Hull& b) {
    if (a.is_empty() || b.is_empty()) return Hull::empty(a.nvars);
    Hull r(a.nvars);
    for (size_t m = 1; m < r.lo.size(); ++m) {
        r.lo[m] = sat_add(a.lo[m], b.lo[m]);
        r.hi[m] = sat_add(a.hi[m], b.hi[m]);
    }
    return r;
}

Hull Hull::unite(const Hull& a, const Hull& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    Hull r(a.nvars);
    for (size_t m = 1; m < r.lo.size(); ++m) {
        r.lo[m] = std::min(a.lo[m], b.lo[m]);
        r.hi[m] = std::max(a.hi[m], b.hi[m]);
    }
    return r;
}

Hull Hull::shifted(const ExpVec& d) const {
    if (is_empty()) return *this;
    Hull r(nvars);
    for (size_t m = 1; m < lo.size(); ++m) {
        std::int64_t s = 0;
        for (int v = 0; v < nvars; ++v)
            if (m & (size_t(1) << v)) s += d[v];
        r.lo[m] = sat_add(lo[m], s);
        r.hi[m] = sat_add(hi[m], s);
    }
    return r;
}

bool dominance_less(const ExpVec& e1, const ExpVec& e2) {
    for (size_t i = e1.size(); i-- > 0;) {
        if (e1[i] != e2[i]) return e1[i] < e2[i];
    }
    return false;
}

ExpVec leading_term(const ScalarSeries& d) {
    if (d.terms.empty()) throw SeriesError("leading term of zero series");
    const ExpVec* best = nullptr;
    for (const auto& [e, c] : d.terms)
        if (!best || dominance_less(e, *best)) best = &e;
    return *best;
}

Hull inverse_hull(const ScalarSeries& d) {
    // supp(1/d) lies in -lead + cone{ m - lead : m in supp d }
    int n = d.ord.size();
    ExpVec lead = leading_term(d);
    Hull h(n);
    for (size_t m = 1; m < h.lo.size(); ++m) {
        std::int64_t base = 0;
        for (int v = 0; v < n; ++v)
            if (m & (size_t(1) << v)) base -= lead[v];
        std::int64_t lo = base, hi = base;
        for (const auto& [t, c] : d.terms) {
            if (t == lead) continue;
            std::int64_t dir = 0;
            for (int v = 0; v < n; ++v)
                if (m & (size_t(1) << v)) dir += t[v] - lead[v];
            if (dir < 0) lo = kNegInf;
            if (dir > 0) hi = kPosInf;
        }
        h.lo[m] = lo;
        h.hi[m] = hi;
    }
    return h;
}

std::optional<Window> split_box(const Hull& a, const Hull& b, const ExpVec& e) {
    int n = a.nvars;
    if (a.is_empty() || b.is_empty())
        return Window(std::vector<int>(n, 0), std::vector<int>(n, -1));
    // mask bounds on the a-side split: sum_S i in [B_lo, B_hi]
    size_t nm = size_t(1) << n;
    std::vector<std::int64_t> blo(nm, kNegInf), bhi(nm, kPosInf);
    for (size_t m = 1; m < nm; ++m) {
        std::int64_t es = 0;
        for (int v = 0; v < n; ++v)
            if (m & (size_t(1) << v)) es += e[v];
        blo[m] = std::max(a.lo[m], sat_add(es, -b.hi[m]));
        bhi[m] = std::min(a.hi[m], sat_add(es, -b.lo[m]));
        if (blo[m] > bhi[m]) return Window(std::vector<int>(n, 0), std::vector<int>(n, -1));
    }
    // propagate to per-variable bounds until stable
    std::vector<std::int64_t> lo(n, kNegInf), hi(n, kPosInf);
    for (int v = 0; v < n; ++v) {
        lo[v] = blo[size_t(1) << v];
        hi[v] = bhi[size_t(1) << v];
    }
    for (int pass = 0; pass < n + 1; ++pass) {
        bool changed = false;
        for (size_t m = 1; m < nm; ++m) {
            for (int v = 0; v < n; ++v) {
                if (!(m & (size_t(1) << v))) continue;
                std::int64_t rest_hi = 0, rest_lo = 0;
                for (int u = 0; u < n; ++u) {
                    if (u == v || !(m & (size_t(1) << u))) continue;
                    rest_hi = sat_add(rest_hi, hi[u]);
                    rest_lo = sat_add(rest_lo, lo[u]);
                }
                std::int64_t nl = sat_add(blo[m], -rest_hi);
                std::int64_t nh = sat_add(bhi[m], -rest_lo);
                if (nl > lo[v]) {
                    lo[v] = nl;
                    changed = true;
                }
                if (nh < hi[v]) {
                    hi[v] = nh;
                    changed = true;
                }
                if (lo[v] > hi[v])
                    return Window(std::vector<int>(n, 0), std::vector<int>(n, -1));
            }
        }
        if (!changed) break;
    }
    std::vector<int> flo(n), fhi(n);
    for (int v = 0; v < n; ++v) {
        if (lo[v] <= kNegInf || hi[v] >= kPosInf) return std::nullopt;
        flo[v] = static_cast<int>(lo[v]);
        fhi[v] = static_cast<int>(hi[v]);
    }
    return Window(flo, fhi);
}

std::string to_string(const ScalarSeries& s) {
    if (s.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : s.terms) {
        std::string cs = c.str();
        if (!first) os << " + ";
        first = false;
        bool needs_paren = cs.find_first_of("+-") != std::string::npos &&
                           !(cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos);
        bool all_zero = true;
        for (int v = 0; v < s.ord.size(); ++v)
            if (e[v] != 0) all_zero = false;
        if (all_zero) {
            os << cs;
            continue;
        }
        if (c.is_one())
            ;
        else if (needs_paren)
            os << "(" << cs << ")*";
        else
            os << cs << "*";
        bool firstv = true;
        for (int v = 0; v < s.ord.size(); ++v) {
            if (e[v] == 0) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << s.ord.name(v);
            if (e[v] != 1) os << "^" << e[v];
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const ScalarSeries& s) { return os << to_string(s); }

}  // namespace vcalc
