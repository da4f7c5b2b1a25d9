#include "vcalc/iota.hpp"

namespace vcalc {

ScalarSeries delta_kernel(const Ordering& ord, const QScalar& ctop, const std::string& vtop,
                          const QScalar& cdom, const std::string& vdom, const QScalar& csub,
                          const std::string& vsub, const Window& target) {
    int it = ord.index(vtop), id = ord.index(vdom), is = ord.index(vsub);
    ScalarSeries r;
    r.ord = ord;
    r.exact = false;
    r.window = target;
    r.hull = Hull(ord.size());
    // support: e_top = -n-1, e_dom = n-i, e_sub = i >= 0
    for (size_t m = 1; m < r.hull.lo.size(); ++m) {
        bool ht = (m >> it) & 1, hd = (m >> id) & 1, hs = (m >> is) & 1;
        std::int64_t lo = kNegInf, hi = kPosInf;
        if (ht && hd && hs) {
            lo = hi = -1;  // (-n-1) + (n-i) + i
        } else if (!ht && !hd && !hs) {
            lo = hi = 0;
        } else if (!ht && !hd && hs) {
            lo = 0;  // i >= 0
        } else if (ht && hd && !hs) {
            hi = -1;  // -1 - i <= -1
        }
        // all remaining combinations are unbounded
        r.hull.lo[m] = lo;
        r.hull.hi[m] = hi;
    }
    // terms within target
    for (long etop = target.lo[it]; etop <= target.hi[it]; ++etop) {
        long n = -etop - 1;
        QScalar top_pow = ctop.pow(etop);
        for (long i = std::max<long>(0, target.lo[is]); i <= target.hi[is]; ++i) {
            if (n >= 0 && i > n) break;
            long ed = n - i;
            if (ed < target.lo[id] || ed > target.hi[id]) continue;
            QScalar c = QScalar(binomial(n, i)) * cdom.pow(ed) * csub.pow(i) * top_pow;
            if (c.is_zero()) continue;
            ExpVec e(ord.size(), 0);
            e[it] = static_cast<int>(etop);
            e[id] = static_cast<int>(ed);
            e[is] = static_cast<int>(i);
            r.terms.emplace(std::move(e), std::move(c));
        }
    }
    return r;  // cert empty: all target cells known
}

ScalarSeries delta_ratio_kernel(const Ordering& ord, const QScalar& c, const std::string& z,
                                const std::string& w, const Window& target) {
    int iz = ord.index(z), iw = ord.index(w);
    ScalarSeries r;
    r.ord = ord;
    r.exact = false;
    r.window = target;
    r.hull = Hull(ord.size());
    for (size_t m = 1; m < r.hull.lo.size(); ++m) {
        bool hz = (m >> iz) & 1, hw = (m >> iw) & 1;
        std::int64_t lo = kNegInf, hi = kPosInf;
        if (hz == hw) lo = hi = 0;  // e_z + e_w = 0, or neither
        r.hull.lo[m] = lo;
        r.hull.hi[m] = hi;
    }
    for (long k = target.lo[iz]; k <= target.hi[iz]; ++k) {
        if (-k < target.lo[iw] || -k > target.hi[iw]) continue;
        QScalar ck = c.pow(k);
        ExpVec e(ord.size(), 0);
        e[iz] = static_cast<int>(k);
        e[iw] = static_cast<int>(-k);
        r.terms.emplace(std::move(e), std::move(ck));
    }
    return r;
}

}  // namespace vcalc
