#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "vcalc/scalars.hpp"
#include "vcalc/spectrum.hpp"

using namespace vcalc;
using vtest::rand_nonzero_qscalar;
using vtest::rand_qscalar;

TEST_CASE("polynomial fraction reduces") {
    // (s^4 - 1)/(s^2 - 1) = s^2 + 1
    QScalar a = parse_scalar("(s^4-1)/(s^2-1)");
    QScalar expect = parse_scalar("s^2+1");
    CHECK(a == expect);
    CHECK(a.den().degree() == 0);
}

TEST_CASE("inverse law") {
    QScalar a = parse_scalar("s^3/(s-2)");
    CHECK((a * a.inverse()).is_one());
    CHECK_THROWS_AS(QScalar(0).inverse(), ScalarError);
    CHECK_THROWS_AS(a / QScalar(0), ScalarError);
}

TEST_CASE("quarter power of q is s") {
    CHECK(QScalar::q_quarter(1) == QScalar::s());
    CHECK(QScalar::q(1) == QScalar::s().pow(4));
    CHECK(QScalar::q_quarter(-3) == QScalar::s().pow(-3));
}

TEST_CASE("field axioms on random samples") {
    for (int i = 0; i < 200; ++i) {
        QScalar a = rand_qscalar(), b = rand_qscalar(), c = rand_qscalar();
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + (b + c) == (a + b) + c);
        CHECK(a * b == b * a);
    }
    for (int i = 0; i < 50; ++i) {
        QScalar a = rand_nonzero_qscalar();
        CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("normal form uniqueness") {
    for (int i = 0; i < 100; ++i) {
        QScalar a = rand_qscalar(), b = rand_qscalar();
        CHECK(((a - b).is_zero()) == (a == b));
    }
}

TEST_CASE("monomial recognition") {
    CHECK(QScalar::s(7).as_unit_monomial() == std::make_pair(false, 7));
    CHECK((-QScalar::s(-2)).as_unit_monomial() == std::make_pair(true, -2));
    CHECK(!parse_scalar("s+1").as_unit_monomial().has_value());
    auto m = parse_scalar("3*s^2").as_monomial();
    REQUIRE(m.has_value());
    CHECK(m->coeff == Rational(3));
    CHECK(m->exp == 2);
}

TEST_CASE("gamma membership: Gamma(q,1)") {
    SpectrumGroup g = SpectrumGroup::gamma_q(1);  // generators s^4, s
    auto r = g.member(QScalar::s(7));
    REQUIRE(r.status == Membership::Yes);
    CHECK(4 * r.witness[0] + 1 * r.witness[1] == 7);
}

TEST_CASE("gamma membership: Gamma(q,4) excludes s^2") {
    SpectrumGroup g = SpectrumGroup::gamma_q(4);  // generators s^4, s^4
    CHECK(g.member(QScalar::s(2)).status == Membership::No);
    CHECK(g.member(QScalar::s(8)).status == Membership::Yes);
}

TEST_CASE("gamma membership: Gamma(q,2) contains q^3 gamma^{1/2} = s^14") {
    // brute-force oracle: 4m + 2n = 14 has a solution
    bool solvable = false;
    for (int m = -20; m <= 20 && !solvable; ++m)
        for (int n = -20; n <= 20 && !solvable; ++n)
            if (4 * m + 2 * n == 14) solvable = true;
    REQUIRE(solvable);
    SpectrumGroup g = SpectrumGroup::gamma_q(2);
    auto r = g.member(QScalar::s(14));
    REQUIRE(r.status == Membership::Yes);
    CHECK(4 * r.witness[0] + 2 * r.witness[1] == 14);
}

TEST_CASE("membership undecided on non-monomial input") {
    SpectrumGroup g = SpectrumGroup::gamma_q(1);
    CHECK(g.member(parse_scalar("s+1")).status == Membership::Undecided);
}

TEST_CASE("sign group") {
    SpectrumGroup g = SpectrumGroup::sign_group();
    CHECK(g.member(QScalar(-1)).status == Membership::Yes);
    CHECK(g.member(QScalar(1)).status == Membership::Yes);
    CHECK(g.member(QScalar::s(1)).status == Membership::No);
    auto sample = g.sample(1);
    CHECK(sample.size() == 2);
}

TEST_CASE("negative generators and parity") {
    // group <-s^2>: contains s^4 (even powers positive), -s^2, but not s^2
    SpectrumGroup g({{2, true}}, "<-s^2>");
    CHECK(g.member(QScalar::s(4)).status == Membership::Yes);
    CHECK(g.member(-QScalar::s(2)).status == Membership::Yes);
    CHECK(g.member(QScalar::s(2)).status == Membership::No);
    CHECK(g.member(-QScalar::s(4)).status == Membership::No);
}

TEST_CASE("scalar parser roundtrips") {
    for (int i = 0; i < 25; ++i) {
        QScalar a = rand_qscalar();
        CHECK(parse_scalar(a.str()) == a);
    }
}
