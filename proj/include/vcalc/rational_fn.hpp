#pragma once

// Elements of the localized ring Q(s)_*(x1,...,xr): an exact Laurent
// polynomial numerator over a product of tracked denominator factors.
// Factors keep their shape (pure variable, binomial x_i - alpha*x_j, or an
// opaque polynomial) because the iota maps and the Gamma-membership checks
// treat the shapes differently.

#include "vcalc/scalars.hpp"
#include "vcalc/series.hpp"

#include <string>
#include <vector>

namespace vcalc {

struct DenFactor {
    enum class Kind { Var, Linear, Opaque };
    Kind kind = Kind::Var;
    std::string vi, vj;       // Var: vi;  Linear: vi - alpha*vj
    QScalar alpha;            // Linear only (a unit)
    ScalarSeries poly;        // Opaque: exact polynomial
    int mult = 1;

    ScalarSeries materialize(const Ordering& ord) const;  // single power
};

class RationalFn {
  public:
    RationalFn() = default;
    explicit RationalFn(ScalarSeries numerator) : num_(std::move(numerator)) {}
    RationalFn(ScalarSeries numerator, std::vector<DenFactor> den)
        : num_(std::move(numerator)), den_(std::move(den)) {}

    static RationalFn one(const Ordering& vars);
    static RationalFn from_scalar(const Ordering& vars, const QScalar& c);
    // 1 / (vi - alpha*vj)^mult
    static RationalFn linear_inverse(const Ordering& vars, const std::string& vi,
                                     const QScalar& alpha, const std::string& vj, int mult = 1);
    static RationalFn var_inverse(const Ordering& vars, const std::string& v, int mult = 1);

    const ScalarSeries& num() const { return num_; }
    const std::vector<DenFactor>& den() const { return den_; }
    const Ordering& vars() const { return num_.ord; }
    bool is_zero() const { return num_.terms.empty(); }

    RationalFn operator*(const RationalFn& o) const;
    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-() const;
    RationalFn scaled(const QScalar& c) const;
    RationalFn derivative(const std::string& var) const;

    // Substitute each variable by an exact (polynomial) series over `out`.
    // Linear factors generally lose their shape and become opaque.
    RationalFn substituted(const Ordering& out,
                           const std::vector<ScalarSeries>& images) const;

    // The unique expansion into the iterated Laurent field given by `ord`,
    // certified within `target`.
    ScalarSeries expand(const Ordering& ord, const Window& target) const;

    // exact denominator polynomial (product of the factors)
    ScalarSeries den_poly() const;

    std::string str() const;

  private:
    ScalarSeries num_;
    std::vector<DenFactor> den_;
};

// Fold a chain product with automatic intermediate windows.  Each factor may
// be exact or window-certified; intermediate windows are derived from the
// factor hulls so that certification survives to `target`.
ScalarSeries mul_chain(const std::vector<ScalarSeries>& factors, const Window& target);

}  // namespace vcalc
