#pragma once

// Elements of E(W) = Hom(W, W((x))) over a truncated module: operator-valued
// series evaluated lazily per basis vector.  Every field is homogeneous
// within a weight interval [wlo, whi]: the coefficient of x^e maps degree-d
// vectors into degrees d + e + [wlo, whi].  That interval drives the
// certified-region bookkeeping of every product.

#include "vcalc/module.hpp"
#include "vcalc/series.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace vcalc {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full evaluation data of a field on one vector: the coefficient of x^e is
// coeffs[e] (absent = zero) and is certified for every e <= cert_hi.
struct FieldEval {
    std::map<long, ModVec> coeffs;
    long cert_hi = kPosInf;

    ModVec coeff(long e) const {
        auto it = coeffs.find(e);
        return it == coeffs.end() ? ModVec() : it->second;
    }
    long low_order() const {  // smallest exponent with a nonzero coefficient
        return coeffs.empty() ? 0 : coeffs.begin()->first;
    }
};

class FieldImpl {
  public:
    virtual ~FieldImpl() = default;
    virtual FieldEval eval_basis(int idx) const = 0;

    ModulePtr mod;
    int wlo = 0, whi = 0;
    std::string label;

    const FieldEval& eval(int idx) const {
        auto it = cache_.find(idx);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(idx, eval_basis(idx)).first->second;
    }

  private:
    mutable std::map<int, FieldEval> cache_;
};

class Field {
  public:
    Field() = default;
    explicit Field(std::shared_ptr<const FieldImpl> impl) : p_(std::move(impl)) {}

    bool valid() const { return static_cast<bool>(p_); }
    const ModulePtr& module() const { return p_->mod; }
    int weight_lo() const { return p_->wlo; }
    int weight_hi() const { return p_->whi; }
    const std::string& label() const { return p_->label; }
    const FieldImpl* impl() const { return p_.get(); }

    const FieldEval& eval(int basisIdx) const { return p_->eval(basisIdx); }
    FieldEval eval(const ModVec& v) const;

    // ---- constructors -------------------------------------------------------

    // generating function of a mode family: sum_m a(m) x^{-m-weight}
    static Field generating(ModulePtr mod, const std::string& family);
    // annihilation-free part: sum_{m<0} a(m) x^{-m-weight}
    static Field generating_plus(ModulePtr mod, const std::string& family);
    static Field identity(ModulePtr mod);
    static Field sum(std::vector<std::pair<QScalar, Field>> parts, std::string label = "");
    static Field scaled(const QScalar& c, const Field& f);
    // R_alpha: a(x) -> a(alpha x)
    static Field rescale_arg(const Field& f, const QScalar& alpha);
    // D = d/dx
    static Field deriv(const Field& f);
    // f(t) action: (g(t) a)(x) = g(x) a(x); g must be an exact Laurent poly
    static Field t_multiply(const ScalarSeries& g, const Field& f);
    static Field custom(ModulePtr mod, int wlo, int whi, std::string label,
                        std::function<FieldEval(int)> ev);

    bool is_identity_candidate() const;  // cheap structural check used in reports

  private:
    std::shared_ptr<const FieldImpl> p_;
};

// Evaluate psi_1(x_1) ... psi_r(x_r) w, certified by the suffix-degree
// staircase; `vars` names the variables left to right.
ModSeries multi_evaluate(const std::vector<Field>& fields, const std::vector<std::string>& vars,
                         const ModVec& w, const Window& target);

// Evaluate a single field as a 1-variable ModSeries in `var`.
ModSeries field_series(const Field& f, const std::string& var, const ModVec& w,
                       const Window& target);

// Coefficient-wise equality of two fields on every basis vector, within the
// per-vector certified range capped by `probe_hi`.
struct FieldCompare {
    bool equal = true;
    int first_basis_mismatch = -1;
    long mismatch_exp = 0;
};
FieldCompare fields_equal(const Field& a, const Field& b, long probe_lo, long probe_hi);

}  // namespace vcalc
