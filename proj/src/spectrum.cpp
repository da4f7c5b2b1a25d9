#include "vcalc/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace vcalc {

SpectrumGroup::SpectrumGroup(std::vector<SpectrumGen> gens, std::string description)
    : gens_(std::move(gens)), desc_(std::move(description)) {}

SpectrumGroup SpectrumGroup::gamma_q(int level) {
    return SpectrumGroup({{4, false}, {level, false}},
                         "Gamma(q,l=" + std::to_string(level) + ")");
}

SpectrumGroup SpectrumGroup::trivial() { return SpectrumGroup({}, "{1}"); }

SpectrumGroup SpectrumGroup::sign_group() { return SpectrumGroup({{0, true}}, "<-1>"); }

namespace {

// Solves sum m_i k_i = k over Z.  Returns a particular solution and a basis
// of the homogeneous solution lattice, via the extended-gcd chain.
struct DioSolution {
    bool solvable = false;
    std::vector<long> particular;
    std::vector<std::vector<long>> kernel;
};

long ext_gcd(long a, long b, long& x, long& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::abs(a);
    }
    long x1, y1;
    long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

DioSolution solve_dio(const std::vector<long>& k, long target) {
    DioSolution out;
    size_t n = k.size();
    if (n == 0) {
        out.solvable = (target == 0);
        return out;
    }
    // chain: g_1 = k_1, g_i = gcd(g_{i-1}, k_i); track the combination rows.
    // comb[i] expresses g_i as a combination of k_1..k_n.
    std::vector<long> g(n);
    std::vector<std::vector<long>> comb(n, std::vector<long>(n, 0));
    g[0] = std::abs(k[0]);
    comb[0][0] = k[0] >= 0 ? 1 : -1;
    out.kernel.clear();
    for (size_t i = 1; i < n; ++i) {
        long x, y;
        long gi = ext_gcd(g[i - 1], k[i], x, y);
        for (size_t j = 0; j < n; ++j) comb[i][j] = x * comb[i - 1][j];
        comb[i][i] += y;
        // kernel vector: (k_i/gi) * comb[i-1] - (g_{i-1}/gi) * e_i
        if (gi != 0) {
            std::vector<long> kv(n, 0);
            for (size_t j = 0; j < n; ++j) kv[j] = (k[i] / gi) * comb[i - 1][j];
            kv[i] -= g[i - 1] / gi;
            out.kernel.push_back(kv);
        } else {
            // both zero so far: e_i itself is in the kernel
            std::vector<long> kv(n, 0);
            kv[i] = 1;
            out.kernel.push_back(kv);
        }
        g[i] = gi;
    }
    // generators with k_i = 0 contribute free kernel directions via the chain
    if (g[0] == 0) {
        std::vector<long> kv(n, 0);
        kv[0] = 1;
        out.kernel.push_back(kv);
    }
    long gn = g[n - 1];
    if (gn == 0) {
        out.solvable = (target == 0);
        out.particular.assign(n, 0);
        return out;
    }
    if (target % gn != 0) return out;
    out.solvable = true;
    out.particular.assign(n, 0);
    long scale = target / gn;
    for (size_t j = 0; j < n; ++j) out.particular[j] = scale * comb[n - 1][j];
    return out;
}

int parity(const std::vector<long>& m, const std::vector<SpectrumGen>& gens) {
    int p = 0;
    for (size_t i = 0; i < m.size(); ++i)
        if (gens[i].negative) p ^= static_cast<int>(((m[i] % 2) + 2) % 2);
    return p;
}

}  // namespace

MembershipResult SpectrumGroup::member(const QScalar& a) const {
    MembershipResult r;
    auto um = a.as_unit_monomial();
    if (!um) {
        r.status = Membership::Undecided;
        return r;
    }
    auto [neg, k] = *um;
    std::vector<long> exps;
    exps.reserve(gens_.size());
    for (const auto& g : gens_) exps.push_back(g.exp);
    DioSolution sol = solve_dio(exps, k);
    if (!sol.solvable) {
        r.status = Membership::No;
        return r;
    }
    int need = neg ? 1 : 0;
    int have = parity(sol.particular, gens_);
    if (have == need) {
        r.status = Membership::Yes;
        r.witness = sol.particular;
        return r;
    }
    // try to fix the parity with a homogeneous solution of odd parity
    for (const auto& kv : sol.kernel) {
        if (parity(kv, gens_) == 1) {
            r.status = Membership::Yes;
            r.witness = sol.particular;
            for (size_t i = 0; i < kv.size(); ++i) r.witness[i] += kv[i];
            return r;
        }
    }
    r.status = Membership::No;
    return r;
}

std::vector<QScalar> SpectrumGroup::sample(int bound) const {
    std::set<std::pair<bool, int>> seen;
    std::vector<QScalar> out;
    std::vector<long> idx(gens_.size(), -bound);
    auto emit = [&](bool neg, int exp) {
        if (seen.insert({neg, exp}).second) {
            QScalar v = QScalar::s(exp);
            out.push_back(neg ? -v : v);
        }
    };
    if (gens_.empty()) {
        emit(false, 0);
        return out;
    }
    // enumerate exponent vectors in [-bound, bound]^n
    for (;;) {
        int exp = 0;
        int neg = 0;
        for (size_t i = 0; i < gens_.size(); ++i) {
            exp += static_cast<int>(idx[i]) * gens_[i].exp;
            if (gens_[i].negative) neg ^= static_cast<int>(((idx[i] % 2) + 2) % 2);
        }
        emit(neg != 0, exp);
        size_t i = 0;
        while (i < gens_.size() && ++idx[i] > bound) idx[i++] = -bound;
        if (i == gens_.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const QScalar& a, const QScalar& b) {
        auto ua = a.as_unit_monomial(), ub = b.as_unit_monomial();
        return std::make_pair(std::abs(ua->second), ua->first ? 1 : 0) <
               std::make_pair(std::abs(ub->second), ub->first ? 1 : 0);
    });
    return out;
}

}  // namespace vcalc
