#include "vcalc/module.hpp"

#include <algorithm>
#include <sstream>

namespace vcalc {

std::string ModVec::str() const {
    if (comp.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : comp) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*e" << i;
    }
    return os.str();
}

void ModeAlgebra::set_relation(int a, int b, ModeRelation r) { rel_[{a, b}] = std::move(r); }

const ModeRelation& ModeAlgebra::relation(int a, int b) const {
    auto it = rel_.find({a, b});
    if (it == rel_.end()) throw ModuleError("relation table incomplete");
    return it->second;
}

void ModeAlgebra::check_consistency() const {
    // antisymmetry of the lie part: [a(m), b(n)] = -[b(n), a(m)]
    for (int a = 0; a < nfam(); ++a)
        for (int b = 0; b < nfam(); ++b) {
            const ModeRelation& ab = relation(a, b);
            const ModeRelation& ba = relation(b, a);
            if (!(ab.theta * ba.theta).is_one())
                throw ModuleError("exchange factors not inverse for " + families[a].name + "," +
                                  families[b].name);
            if (ab.theta.is_one()) {
                for (const auto& [f, c] : ab.lie) {
                    QScalar other(0);
                    for (const auto& [g, d] : ba.lie)
                        if (g == f) other = d;
                    if (!(c + other).is_zero())
                        throw ModuleError("bracket table not antisymmetric for " +
                                          families[a].name + "," + families[b].name);
                }
                if (ab.central_fn && ba.central_fn) {
                    for (long m = -4; m <= 4; ++m)
                        if (!(ab.central_fn(m) + ba.central_fn(-m)).is_zero())
                            throw ModuleError("central terms not antisymmetric for " +
                                              families[a].name + "," + families[b].name);
                }
            }
        }
}

namespace {

// canonical PBW key: family ascending, then mode descending
bool word_key_le(const std::pair<int, int>& a, const std::pair<int, int>& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second >= b.second;
}

void enumerate_words(const ModeAlgebra& alg, int depth, int fam, int next_mode, Word& cur,
                     int used, std::vector<Word>& out) {
    if (fam == alg.nfam()) {
        out.push_back(cur);
        return;
    }
    // either move on to the next family, or extend with a mode of this one
    enumerate_words(alg, depth, fam + 1, -1, cur, used, out);
    for (int m = next_mode; used - m <= depth; --m) {
        cur.emplace_back(fam, m);
        enumerate_words(alg, depth, fam, m, cur, used - m, out);
        cur.pop_back();
    }
}

}  // namespace

FockModule::FockModule(ModeAlgebra alg, int depth) : alg_(std::move(alg)), depth_(depth) {
    alg_.check_consistency();
    Word cur;
    enumerate_words(alg_, depth_, 0, -1, cur, 0, basis_);
    std::sort(basis_.begin(), basis_.end(), [](const Word& a, const Word& b) {
        int da = 0, db = 0;
        for (auto& [f, m] : a) da -= m;
        for (auto& [f, m] : b) db -= m;
        if (da != db) return da < db;
        return a < b;
    });
    for (size_t i = 0; i < basis_.size(); ++i) {
        index_[basis_[i]] = static_cast<int>(i);
        int d = 0;
        for (auto& [f, m] : basis_[i]) d -= m;
        degree_.push_back(d);
    }
}

int FockModule::degree(const ModVec& v) const {
    int d = 0;
    for (const auto& [i, c] : v.comp) d = std::max(d, degree_[i]);
    return d;
}

std::string FockModule::basis_label(int idx) const {
    const Word& w = basis_[idx];
    if (w.empty()) return "|0>";
    std::ostringstream os;
    for (const auto& [f, m] : w) os << alg_.families[f].name << "(" << m << ")";
    os << "|0>";
    return os.str();
}

const ModVec& FockModule::act(int fam, long mode, int idx) const {
    auto key = std::make_tuple(fam, mode, idx);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ModVec v = act_uncached(fam, mode, idx);
    return cache_.emplace(key, std::move(v)).first->second;
}

ModVec FockModule::act(int fam, long mode, const ModVec& v) const {
    ModVec r;
    for (const auto& [i, c] : v.comp) {
        ModVec piece = act(fam, mode, i).scaled(c);
        r = r + piece;
    }
    return r;
}

ModVec FockModule::act_uncached(int fam, long mode, int idx) const {
    return act_word(fam, mode, basis_[idx]);
}

ModVec FockModule::act_word(int fam, long mode, const Word& w) const {
    ModVec zero;
    if (alg_.families[fam].negative_only && mode >= 0) return zero;
    if (w.empty()) {
        if (mode >= 0) return zero;  // vacuum is killed by the nonnegative part
        if (-mode > depth_) throw ModuleError("module depth exceeded (internal guard)");
        Word nw{{fam, static_cast<int>(mode)}};
        auto it = index_.find(nw);
        if (it == index_.end()) throw ModuleError("basis word missing (internal)");
        return ModVec::unit(it->second);
    }
    auto head = w.front();
    std::pair<int, int> me{fam, static_cast<int>(mode)};
    if (mode < 0 && word_key_le(me, head)) {
        int d = -static_cast<int>(mode);
        for (auto& [f, m] : w) d -= m;
        if (d > depth_) throw ModuleError("module depth exceeded (internal guard)");
        Word nw;
        nw.reserve(w.size() + 1);
        nw.push_back(me);
        nw.insert(nw.end(), w.begin(), w.end());
        auto it = index_.find(nw);
        if (it == index_.end()) throw ModuleError("basis word missing (internal)");
        return ModVec::unit(it->second);
    }
    // commute through the head: a(m) b(n) rest = theta b(n) a(m) rest + [relation] rest
    Word rest(w.begin() + 1, w.end());
    const ModeRelation& rel = alg_.relation(fam, head.first);
    ModVec tail = act_word(fam, mode, rest);
    ModVec r;
    if (!tail.is_zero()) r = r + act(head.first, head.second, tail).scaled(rel.theta);
    long mn = mode + head.second;
    for (const auto& [lf, lc] : rel.lie) {
        if (alg_.families[lf].negative_only && mn >= 0) continue;
        r = r + act_word(lf, mn, rest).scaled(lc);
    }
    if (rel.central_fn && mn == 0) {
        QScalar c = rel.central_fn(mode);
        if (!c.is_zero()) {
            ModVec base;
            if (rest.empty()) {
                base = ModVec::unit(0);
            } else {
                auto it = index_.find(rest);
                if (it == index_.end()) throw ModuleError("basis word missing (internal)");
                base = ModVec::unit(it->second);
            }
            r = r + base.scaled(c);
        }
    }
    return r;
}

}  // namespace vcalc
