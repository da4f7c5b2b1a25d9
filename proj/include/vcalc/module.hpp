#pragma once

// Depth-truncated graded modules built from mode-algebra relation tables:
// PBW bases of negative-mode words acting on a vacuum, with positive modes
// commuted through by the bracket (or exchange) relations.

#include "vcalc/scalars.hpp"
#include "vcalc/series.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace vcalc {

struct ModuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sparse vector over a module basis.
struct ModVec {
    std::map<int, QScalar> comp;

    ModVec() = default;
    static ModVec unit(int idx) {
        ModVec v;
        v.comp[idx] = QScalar(1);
        return v;
    }
    bool is_zero() const { return comp.empty(); }
    void add(int idx, const QScalar& c) {
        if (c.is_zero()) return;
        auto it = comp.find(idx);
        if (it == comp.end()) {
            comp.emplace(idx, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) comp.erase(it);
        }
    }
    ModVec operator+(const ModVec& o) const {
        ModVec r = *this;
        for (const auto& [i, c] : o.comp) r.add(i, c);
        return r;
    }
    ModVec operator-() const {
        ModVec r = *this;
        for (auto& [i, c] : r.comp) c = -c;
        return r;
    }
    ModVec operator-(const ModVec& o) const { return *this + (-o); }
    ModVec scaled(const QScalar& s) const {
        ModVec r;
        if (s.is_zero()) return r;
        for (const auto& [i, c] : comp) r.comp.emplace(i, s * c);
        return r;
    }
    bool operator==(const ModVec& o) const { return comp == o.comp; }
    std::string str() const;
};

template <>
struct CoeffOps<ModVec> {
    static bool is_zero(const ModVec& c) { return c.is_zero(); }
    static ModVec scale(const QScalar& s, const ModVec& c) { return c.scaled(s); }
    static std::string str(const ModVec& c) { return c.str(); }
};

using ModSeries = Series<ModVec>;

struct FamilySpec {
    std::string name;
    int weight = 1;            // field convention a(x) = sum_m a(m) x^{-m-weight}
    bool negative_only = false;  // family has modes m <= -1 only (no annihilators)
};

// Relation between two mode families:
//   a(m) b(n) = theta * b(n) a(m) + sum_k lie_k(m+n) + delta_{m+n,0} central_fn(m)
// With theta = 1 this is a Lie bracket table; theta != 1 gives exchange type.
struct ModeRelation {
    QScalar theta = QScalar(1);
    std::vector<std::pair<int, QScalar>> lie;  // (family, coefficient) at mode m+n
    std::function<QScalar(long)> central_fn;   // may be null (means 0)
};

class ModeAlgebra {
  public:
    std::string name;
    std::vector<FamilySpec> families;
    QScalar level;  // central charge

    int family(const std::string& fname) const {
        for (size_t i = 0; i < families.size(); ++i)
            if (families[i].name == fname) return static_cast<int>(i);
        throw ModuleError("unknown family " + fname);
    }
    int nfam() const { return static_cast<int>(families.size()); }

    void set_relation(int a, int b, ModeRelation r);
    const ModeRelation& relation(int a, int b) const;

    // sanity: bracket antisymmetry of the table (lie-bracket type only)
    void check_consistency() const;

  private:
    std::map<std::pair<int, int>, ModeRelation> rel_;
};

// PBW word: (family, mode) pairs in canonical order (family asc, mode desc).
using Word = std::vector<std::pair<int, int>>;

class FockModule {
  public:
    FockModule(ModeAlgebra alg, int depth);

    const ModeAlgebra& algebra() const { return alg_; }
    int depth() const { return depth_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int vacuum() const { return 0; }
    int degree(int idx) const { return degree_[idx]; }
    int degree(const ModVec& v) const;  // max degree over components; 0 for zero
    const Word& word(int idx) const { return basis_[idx]; }
    std::string basis_label(int idx) const;

    // action of mode (fam, m); result degree must stay within depth
    const ModVec& act(int fam, long mode, int idx) const;
    ModVec act(int fam, long mode, const ModVec& v) const;

  private:
    ModVec act_uncached(int fam, long mode, int idx) const;
    ModVec act_word(int fam, long mode, const Word& w) const;

    ModeAlgebra alg_;
    int depth_;
    std::vector<Word> basis_;
    std::vector<int> degree_;
    std::map<Word, int> index_;
    mutable std::map<std::tuple<int, long, int>, ModVec> cache_;
};

using ModulePtr = std::shared_ptr<const FockModule>;

}  // namespace vcalc
