#pragma once

// Multiplicative subgroups of Q(s)^x generated by unit monomials +-s^k.
// Membership for a query +-s^k reduces to an integer linear system over
// the generator exponents plus a sign-parity condition.

#include "vcalc/scalars.hpp"

#include <string>
#include <vector>

namespace vcalc {

struct SpectrumGen {
    int exp = 0;          // s-exponent
    bool negative = false;  // generator is -s^exp
};

enum class Membership { Yes, No, Undecided };

struct MembershipResult {
    Membership status = Membership::Undecided;
    std::vector<long> witness;  // exponents on the generators when Yes
};

class SpectrumGroup {
  public:
    SpectrumGroup() = default;
    SpectrumGroup(std::vector<SpectrumGen> gens, std::string description);

    // Gamma(q, level) = { q^{m + n*level/4} } with q = s^4: generators s^4, s^level.
    static SpectrumGroup gamma_q(int level);
    static SpectrumGroup trivial();
    static SpectrumGroup sign_group();  // <-1>

    const std::vector<SpectrumGen>& generators() const { return gens_; }
    const std::string& description() const { return desc_; }

    MembershipResult member(const QScalar& a) const;

    // Representative sample of group elements used by clearing-poly searches:
    // products of generators with exponent magnitudes <= bound.
    std::vector<QScalar> sample(int bound) const;

  private:
    std::vector<SpectrumGen> gens_;
    std::string desc_;
};

}  // namespace vcalc
