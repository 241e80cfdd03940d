#include <catch2/catch_amalgamated.hpp>

#include "diraclab/clifford.hpp"

using namespace diraclab;

namespace {

SymbolEntry sym(std::initializer_list<std::pair<int, ExactComplex>> ts) {
    SymbolEntry e;
    for (const auto& t : ts) e.add(t.first, t.second);
    return e;
}

const ExactComplex one = ExactComplex::one();
const ExactComplex im = ExactComplex::i();

// terms of the expanded alpha-family M-seminorm: per component, one
// (p1 +- i p2) term and one p3 term (signs: + for components 1,3; - for 2,4)
TermMultiset alpha_expected_terms() {
    TermMultiset ms;
    for (int comp = 1; comp <= 4; ++comp) {
        ExactComplex s = (comp % 2 == 1) ? im : -im;
        ms.insert({comp, sym({{1, one}, {2, s}})});
        ms.insert({comp, sym({{3, one}})});
    }
    ms.sort();
    return ms;
}

// beta analogue: p3 replaced by p3 + i p4 on components 1,4 and p3 - i p4 on 2,3
TermMultiset beta_expected_terms() {
    TermMultiset ms;
    for (int comp = 1; comp <= 4; ++comp) {
        ExactComplex s12 = (comp % 2 == 1) ? im : -im;
        ExactComplex s34 = (comp == 1 || comp == 4) ? im : -im;
        ms.insert({comp, sym({{1, one}, {2, s12}})});
        ms.insert({comp, sym({{3, one}, {4, s34}})});
    }
    ms.sort();
    return ms;
}

}  // namespace

TEST_CASE("pauli matrices, entrywise") {
    auto s = build_pauli();
    CHECK(s[0](0, 1) == one);
    CHECK(s[0](1, 0) == one);
    CHECK(s[0](0, 0).is_zero());
    CHECK(s[1](0, 1) == -im);
    CHECK(s[1](1, 0) == im);
    CHECK(s[2](0, 0) == one);
    CHECK(s[2](1, 1) == -one);
    CHECK(s[2] * s[2] == ConstMatrix::identity(2));
    CHECK((s[0] * s[1] + s[1] * s[0]).is_zero());
    for (const auto& m : s) CHECK(m.is_hermitian());
}

TEST_CASE("alpha and beta families") {
    auto alpha = build_alpha();
    // alpha_1 row 1 = (0,0,0,1)
    CHECK(alpha[0](0, 0).is_zero());
    CHECK(alpha[0](0, 1).is_zero());
    CHECK(alpha[0](0, 2).is_zero());
    CHECK(alpha[0](0, 3) == one);
    for (const auto& m : alpha) {
        CHECK(m.is_hermitian());
        CHECK(m * m == ConstMatrix::identity(4));
    }
    CHECK((alpha[0] * alpha[1] + alpha[1] * alpha[0]).is_zero());

    auto beta = build_beta();
    CHECK(beta[3](0, 2) == -im);
    CHECK(beta[3] * beta[3] == ConstMatrix::identity(4));
    CHECK((beta[2] * beta[3] + beta[3] * beta[2]).is_zero());
    for (const auto& m : beta) CHECK(m.is_hermitian());
}

TEST_CASE("anticommutation reports") {
    auto alpha = build_alpha();
    CHECK(anticommutation_report({alpha.begin(), alpha.end()}).all_zero);
    auto beta = build_beta();
    CHECK(anticommutation_report({beta.begin(), beta.end()}).all_zero);
    auto s = build_pauli();
    CHECK(anticommutation_report({s[0], s[0]}).all_zero);

    ConstMatrix bad = ConstMatrix::identity(2) + ConstMatrix::identity(2);
    CHECK_FALSE(anticommutation_report({bad}).all_zero);
    CHECK_THROWS_AS(anticommutation_report({s[0], ConstMatrix::identity(4)}),
                    std::invalid_argument);
}

TEST_CASE("operator symbols reproduce the explicit entry tables") {
    SymbolMatrix a = alpha_dot_p();
    CHECK(a(0, 3) == sym({{1, one}, {2, -im}}));  // p1 - i p2
    CHECK(a(0, 2) == sym({{3, one}}));
    CHECK(a(1, 2) == sym({{1, one}, {2, im}}));
    CHECK(a(1, 3) == sym({{3, -one}}));
    CHECK(a(2, 0) == sym({{3, one}}));
    CHECK(a(3, 1) == sym({{3, -one}}));
    CHECK(a.nonzero_entries().size() == 8);
    for (int r = 0; r < 4; ++r) CHECK(a.nonzeros_in_row(r) == 2);

    SymbolMatrix b = beta_dot_p();
    CHECK(b(0, 2) == sym({{3, one}, {4, -im}}));  // p3 - i p4
    CHECK(b(2, 0) == sym({{3, one}, {4, im}}));
    CHECK(b(1, 3) == sym({{3, -one}, {4, -im}}));  // -(p3 + i p4)
    CHECK(b(3, 1) == sym({{3, -one}, {4, im}}));
    CHECK(b.nonzero_entries().size() == 8);

    SymbolMatrix sg = sigma_dot_p_3d();
    CHECK(sg(0, 0) == sym({{3, one}}));
    CHECK(sg(0, 1) == sym({{1, one}, {2, -im}}));
    CHECK(sg(1, 1) == sym({{3, -one}}));
    CHECK(sg.nonzero_entries().size() == 4);
}

TEST_CASE("weyl 2d variants") {
    auto v = weyl2d_variants();
    CHECK(v[0](0, 1) == sym({{1, one}, {2, -im}}));
    CHECK(v[0](0, 0).is_zero());
    CHECK(v[1](0, 0) == sym({{1, one}}));
    CHECK(v[1](0, 1) == sym({{2, one}}));
    CHECK(v[1](1, 1) == sym({{1, -one}}));
    CHECK(v[2](0, 1) == sym({{2, -im}}));

    // each squares to (p1^2+p2^2) I2, equivalently the generating pairs
    // are Clifford pairs
    auto s = build_pauli();
    CHECK(anticommutation_report({s[0], s[1]}).all_zero);
    CHECK(anticommutation_report({s[2], s[0]}).all_zero);
    CHECK(anticommutation_report({s[2], s[1]}).all_zero);
}

TEST_CASE("decomposition enumeration and counting") {
    SymbolMatrix a = alpha_dot_p();
    auto all = enumerate_decompositions(a);
    CHECK(all.size() == 128);  // 2^8 / 2; the quoted 1/2*2^7 = 64 is reported as a discrepancy
    for (const auto& d : all) CHECK(d.part(1) + d.part(2) == a);

    auto sg = sigma_dot_p_3d();
    CHECK(enumerate_decompositions(sg).size() == 8);

    SymbolMatrix single(1, 1);
    single(0, 0).add(1, one);
    auto sd = enumerate_decompositions(single);
    REQUIRE(sd.size() == 1);
    CHECK(sd[0].part(1) == single);
    CHECK(sd[0].part(2).is_zero());
}

TEST_CASE("row condition") {
    SymbolMatrix a = alpha_dot_p();
    auto P13 = projection_diag(4, {0, 2});
    auto P24 = projection_diag(4, {1, 3});
    auto P12 = projection_diag(4, {0, 1});
    auto P34 = projection_diag(4, {2, 3});

    // build the (P13, P24) split as a Decomposition and check it passes
    SymbolMatrix part1 = left_apply(a, P13);
    auto nz = a.nonzero_entries();
    std::vector<uint8_t> assign;
    for (auto [r, c] : nz) assign.push_back(part1(r, c).is_zero() ? 2 : 1);
    Decomposition d1318(a, assign);
    CHECK(d1318.part(1) == part1);
    CHECK(d1318.part(2) == left_apply(a, P24));
    CHECK(row_condition(d1318));

    // (P12, P34) split fails
    SymbolMatrix p12part = left_apply(a, P12);
    std::vector<uint8_t> assign2;
    for (auto [r, c] : nz) assign2.push_back(p12part(r, c).is_zero() ? 2 : 1);
    Decomposition dbad(a, assign2);
    CHECK(dbad.part(1) + dbad.part(2) == a);
    CHECK_FALSE(row_condition(dbad));

    // trivial split fails for alpha.p (rows carry two entries)
    Decomposition triv(a, std::vector<uint8_t>(nz.size(), 1));
    CHECK_FALSE(row_condition(triv));
    (void)P34;
}

TEST_CASE("decom1 membership and counts") {
    SymbolMatrix a = alpha_dot_p();
    auto d1 = decom1(a);
    CHECK(d1.size() == 8);

    // the four named splittings are members
    auto alpha_mats = build_alpha();
    auto contains_split = [&](const SymbolMatrix& base, const SymbolMatrix& partA,
                              const std::vector<Decomposition>& list) {
        for (const auto& d : list)
            if (d.part(1) == partA || d.part(2) == partA) return true;
        return false;
    };
    CHECK(contains_split(a, left_apply(a, projection_diag(4, {0, 2})), d1));
    CHECK(contains_split(a, left_apply(a, projection_diag(4, {0, 3})), d1));

    // block splits (1.25)/(1.26): off-diagonal sigma1 p1 + sigma2 p2 block
    auto s = build_pauli();
    ConstMatrix z2(2, 2);
    auto embed = [&](const ConstMatrix& tl, const ConstMatrix& tr, const ConstMatrix& bl,
                     const ConstMatrix& br) {
        ConstMatrix m(4, 4);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                m(r, c) = tl(r, c);
                m(r, c + 2) = tr(r, c);
                m(r + 2, c) = bl(r, c);
                m(r + 2, c + 2) = br(r, c);
            }
        return m;
    };
    // (alpha.p)_1 of the adjoint-pair split
    SymbolMatrix ap1 = operator_symbol(std::vector<ConstMatrix>{
        embed(z2, s[0], z2, z2), embed(z2, s[1], z2, z2), embed(z2, z2, s[2], z2)});
    CHECK(contains_split(a, ap1, d1));
    // (alpha.p)_3 of the selfadjoint split
    SymbolMatrix ap3 = operator_symbol(std::vector<ConstMatrix>{
        embed(z2, s[0], s[0], z2), embed(z2, s[1], s[1], z2), ConstMatrix(4, 4)});
    CHECK(contains_split(a, ap3, d1));

    SymbolMatrix b = beta_dot_p();
    CHECK(decom1(b).size() == 8);
    CHECK(contains_split(b, left_apply(b, projection_diag(4, {0, 2})), decom1(b)));
    CHECK(contains_split(b, left_apply(b, projection_diag(4, {0, 3})), decom1(b)));

    SymbolMatrix sg = sigma_dot_p_3d();
    auto sgd = decom1(sg);
    CHECK(sgd.size() == 2);
    // the (P1, P2) column split and the diagonal/off-diagonal split
    auto Pcol1 = projection_diag(2, {0});
    CHECK(contains_split(sg, left_apply(sg, Pcol1), sgd));
    SymbolMatrix diag(2, 2);
    diag(0, 0) = sg(0, 0);
    diag(1, 1) = sg(1, 1);
    CHECK(contains_split(sg, diag, sgd));

    // precondition violation: 2-d Weyl variant (a) has single-entry rows
    CHECK_THROWS_AS(decom1(weyl2d_variants()[0]), std::invalid_argument);
}

TEST_CASE("canonical terms match the expanded term lists") {
    SymbolMatrix a = alpha_dot_p();
    auto expected = alpha_expected_terms();
    auto members = decom1(a);
    REQUIRE(members.size() == 8);
    for (const auto& d : members) CHECK(canonical_terms(d) == expected);

    SymbolMatrix b = beta_dot_p();
    auto bexpected = beta_expected_terms();
    for (const auto& d : decom1(b)) CHECK(canonical_terms(d) == bexpected);

    // canonical_terms refuses decompositions violating the row condition
    auto nz = a.nonzero_entries();
    Decomposition triv(a, std::vector<uint8_t>(nz.size(), 1));
    CHECK_THROWS_AS(canonical_terms(triv), std::invalid_argument);
}

TEST_CASE("conjugation identities for the 2-d variants") {
    auto v = weyl2d_variants();
    ConstMatrix N = matrix_N();
    ConstMatrix Np = matrix_Nprime();
    CHECK(N.is_unitary());
    CHECK(Np.is_unitary());
    CHECK(N * N.adjoint() == ConstMatrix::identity(2));

    CHECK(conjugate_symbol(v[1], N) == v[0]);   // N (sigma.p)^(b) N^{-1} = (sigma.p)^(a)
    CHECK(conjugate_symbol(v[2], Np) == v[0]);  // N' (sigma.p)^(c) N'^{-1} = (sigma.p)^(a)
    CHECK(conjugate_symbol(v[0], ConstMatrix::identity(2)) == v[0]);

    ConstMatrix notu(2, 2);
    notu(0, 0) = ExactComplex(2, 0);
    notu(1, 1) = ExactComplex(1, 0);
    CHECK_THROWS_AS(conjugate_symbol(v[0], notu), std::invalid_argument);
}

TEST_CASE("matrix norm bounds for N and N'") {
    const double bound = std::sqrt(2.0) + 1e-12;
    const double inf = std::numeric_limits<double>::infinity();
    for (const ConstMatrix& m :
         {matrix_N(), matrix_N().adjoint(), matrix_Nprime(), matrix_Nprime().adjoint()}) {
        CHECK(m.induced_norm(1) <= bound);
        CHECK(m.induced_norm(2) <= bound);
        CHECK(m.induced_norm(inf) <= bound);
    }
}

TEST_CASE("decomposition json dump") {
    SymbolMatrix sg = sigma_dot_p_3d();
    auto d = decom1(sg);
    auto j = decomposition_to_json(d[0]);
    CHECK(j["base"].size() == 4);
    CHECK(j["assignment"].size() == 4);
    CHECK(j["row_condition"].get<bool>());
    CHECK(j["terms"].size() == 4);
}
