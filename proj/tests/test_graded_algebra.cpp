#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "varjet/poly.hpp"

using namespace varjet;

namespace {

struct Algebra {
    RegistryPtr reg = std::make_shared<Registry>();
    GenId sym(const std::string& name, Parity p, int seq) {
        return reg->intern({GenKind::Symbol, seq, {}, p, name});
    }
};

}  // namespace

TEST_CASE("transposing odd generators flips the sign") {
    Algebra A;
    GenId th1 = A.sym("th1", kOdd, 1);
    GenId th2 = A.sym("th2", kOdd, 2);
    GradedPoly p1 = GradedPoly::generator(A.reg, th1);
    GradedPoly p2 = GradedPoly::generator(A.reg, th2);
    CHECK(p2 * p1 == -(p1 * p2));
    CHECK(p1 * p2 == GradedPoly::monomial(A.reg, Rational(1), {{th1, 1}, {th2, 1}}));
}

TEST_CASE("odd squares vanish, even generators commute") {
    Algebra A;
    GenId th = A.sym("th", kOdd, 1);
    GenId x = A.sym("x", kEven, 2);
    GradedPoly pth = GradedPoly::generator(A.reg, th);
    GradedPoly px = GradedPoly::generator(A.reg, x);
    CHECK((pth * pth).is_zero());
    CHECK(px * pth == pth * px);
    CHECK(px * px == GradedPoly::monomial(A.reg, Rational(1), {{x, 2}}));
}

TEST_CASE("canonical monomial does not depend on the input factor order") {
    Algebra A;
    GenId a = A.sym("a", kOdd, 1);
    GenId b = A.sym("b", kEven, 2);
    GenId c = A.sym("c", kOdd, 3);
    GradedPoly fwd = GradedPoly::monomial(A.reg, Rational(1), {{a, 1}, {b, 1}, {c, 1}});
    GradedPoly rev = GradedPoly::monomial(A.reg, Rational(1), {{c, 1}, {b, 1}, {a, 1}});
    // a and c transpose once: one sign.
    CHECK(rev == -fwd);
}

TEST_CASE("left partial derivative walks past earlier odd factors with a sign") {
    Algebra A;
    GenId th1 = A.sym("th1", kOdd, 1);
    GenId th2 = A.sym("th2", kOdd, 2);
    GradedPoly prod = GradedPoly::generator(A.reg, th1) * GradedPoly::generator(A.reg, th2);
    CHECK(partial(prod, th1) == GradedPoly::generator(A.reg, th2));
    CHECK(partial(prod, th2) == -GradedPoly::generator(A.reg, th1));
}

TEST_CASE("exact rational arithmetic, no drift") {
    Algebra A;
    GenId x = A.sym("x", kEven, 1);
    GradedPoly px = GradedPoly::generator(A.reg, x);
    GradedPoly p = px.scaled(Rational(1, 3)) + px.scaled(Rational(2, 3)) - px;
    CHECK(p.is_zero());
    GradedPoly q = px.scaled(Rational(1, 3)) * px.scaled(Rational(3, 7));
    CHECK(q == GradedPoly::monomial(A.reg, Rational(1, 7), {{x, 2}}));
}

TEST_CASE("homogeneous parity detection") {
    Algebra A;
    GenId th = A.sym("th", kOdd, 1);
    GenId x = A.sym("x", kEven, 2);
    GradedPoly pth = GradedPoly::generator(A.reg, th);
    GradedPoly px = GradedPoly::generator(A.reg, x);
    CHECK(*px.homogeneous_parity() == kEven);
    CHECK(*pth.homogeneous_parity() == kOdd);
    CHECK(*(px * pth).homogeneous_parity() == kOdd);
    CHECK(!(px + pth).homogeneous_parity().has_value());
}

TEST_CASE("graded derivation satisfies the signed Leibniz rule") {
    Algebra A;
    GenId th1 = A.sym("th1", kOdd, 1);
    GenId th2 = A.sym("th2", kOdd, 2);
    GenId x = A.sym("x", kEven, 3);
    GradedPoly one(A.reg, Rational(1));
    // Odd derivation d with d(th1) = 1, d(th2) = 0, d(x) = 0.
    auto image = [&](GenId g) -> const GradedPoly* { return g == th1 ? &one : nullptr; };
    GradedPoly p = GradedPoly::generator(A.reg, x) * GradedPoly::generator(A.reg, th2) *
                   GradedPoly::generator(A.reg, th1);
    // d(x th2 th1) = -x th2 picks up the sign of passing th2.
    GradedPoly want = -(GradedPoly::generator(A.reg, x) * GradedPoly::generator(A.reg, th2));
    CHECK(derive(p, kOdd, image) == want);
}

TEST_CASE("substitution enforces parity agreement") {
    Algebra A;
    GenId th = A.sym("th", kOdd, 1);
    GenId x = A.sym("x", kEven, 2);
    GradedPoly pth = GradedPoly::generator(A.reg, th);
    GradedPoly px = GradedPoly::generator(A.reg, x);
    std::map<GenId, GradedPoly> bad{{th, px}};
    CHECK_THROWS_AS(substitute(pth, bad), ParityError);
    std::map<GenId, GradedPoly> good{{x, px * px}};
    CHECK(substitute(px * px, good) == px * px * px * px);
}

TEST_CASE("homomorphic map across registries") {
    Algebra A, B;
    GenId xa = A.sym("x", kEven, 1);
    GenId xb = B.sym("x", kEven, 1);
    GradedPoly p = GradedPoly::monomial(A.reg, Rational(3, 2), {{xa, 2}});
    GradedPoly moved = map_poly(
        p, B.reg, [](GenId) { return nullptr; }, [&](GenId) { return xb; });
    CHECK(moved == GradedPoly::monomial(B.reg, Rational(3, 2), {{xb, 2}}));
}
