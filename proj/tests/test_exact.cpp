#include <catch2/catch_amalgamated.hpp>

#include "diraclab/exact.hpp"

using namespace diraclab;

TEST_CASE("exact scalar ring operations") {
    ExactComplex a(1, 0), b(0, 1);
    CHECK(a + b == ExactComplex(1, 1));
    CHECK(a * b == b);
    CHECK((b * b) == ExactComplex(-1, 0));
    CHECK((-a) + a == ExactComplex::zero());
    CHECK(ExactComplex::zero().is_zero());

    ExactComplex h = ExactComplex::inv_sqrt2();
    CHECK(h * h == ExactComplex::raw(1, 0, 0, 0, 1));  // 1/2
    ExactComplex two = h * h + h * h + ExactComplex(1, 0);
    CHECK(two == ExactComplex(2, 0));

    // mixed dyadic parities stay exact: 1 + 1/sqrt2, squared and expanded
    ExactComplex m = a + h;
    ExactComplex m2 = m * m;  // 1 + 2/sqrt2 + 1/2 = 3/2 + sqrt2
    CHECK(m2 == ExactComplex::raw(3, 0, 2, 0, 1));
    CHECK(std::abs(m2.to_complex().real() - (1.5 + std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("exact conjugation and serialization") {
    ExactComplex z = ExactComplex::raw(1, -2, 3, 4, 2);
    CHECK(z.conj().conj() == z);
    CHECK((z * z.conj()).to_complex().imag() == 0.0);

    auto recs = ExactComplex::inv_sqrt2().dyadic_records();
    REQUIRE(recs.size() == 1);
    CHECK(recs[0][0] == 1);
    CHECK(recs[0][1] == 0);
    CHECK(recs[0][2] == 1);  // 2^(-1/2)
}

TEST_CASE("matrix algebra over the exact ring") {
    ConstMatrix I = ConstMatrix::identity(2);
    CHECK(I * I == I);
    CHECK(I.is_hermitian());
    CHECK(I.is_unitary());

    ConstMatrix m(2, 2);
    m(0, 1) = ExactComplex(0, -1);
    m(1, 0) = ExactComplex(0, 1);
    CHECK(m.is_hermitian());
    CHECK(m * m == I);

    CHECK(m.induced_norm(1) == 1.0);
    CHECK(m.induced_norm(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(std::abs(m.induced_norm(2) - 1.0) < 1e-12);
}
