#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "matlie/algebra.hpp"
#include "support.hpp"

using namespace matlie;
using namespace testsupport;

namespace {

Scalar q(std::int64_t n, std::int64_t d = 1) {
    return Scalar::from_fraction(FieldDescriptor::rationals(), n, d);
}

AlgebraElement unit_elem(const StructureAlgebra& m2, int n, int s, int t) {
    return m2.basis_element(s * n + t);
}

}  // namespace

TEST_CASE("matrix unit products in M2") {
    auto f = FieldDescriptor::rationals();
    auto m2 = matrix_algebra(f, 2);
    auto e11 = unit_elem(m2, 2, 0, 0), e12 = unit_elem(m2, 2, 0, 1);
    auto e21 = unit_elem(m2, 2, 1, 0), e22 = unit_elem(m2, 2, 1, 1);

    REQUIRE(multiply(e12, e21) == e11);
    REQUIRE(multiply(e11, e22).is_zero());
    REQUIRE(commutator(e12, e21) == e11 - e22);
    REQUIRE(commutator(e11, e11).is_zero());
    // [e11, e12] = e11 e12 - e12 e11 = e12 - 0, by direct matrix computation.
    REQUIRE(commutator(e11, e12) == e12);
}

TEST_CASE("nilpotent generator of F[t]/(t^2)") {
    auto a = truncated_poly_algebra(FieldDescriptor::rationals(), 2);
    auto t = a.basis_element(1);
    REQUIRE(multiply(t, t).is_zero());
}

TEST_CASE("parent mismatch is rejected") {
    auto f = FieldDescriptor::rationals();
    auto a = matrix_algebra(f, 2);
    auto b = matrix_algebra(f, 2);
    REQUIRE_THROWS_AS(multiply(a.basis_element(0), b.basis_element(0)), Error);
}

TEST_CASE("verify_associativity accepts the standard examples") {
    auto f = FieldDescriptor::rationals();
    REQUIRE(verify_associativity(matrix_algebra(f, 3)).ok);
    REQUIRE(verify_associativity(StructureAlgebra(f, 0)).ok);
    REQUIRE(verify_associativity(triangular_algebra(f, 3)).ok);
    REQUIRE(verify_associativity(matrix_over_local(f, 2, 3)).ok);

    StructureAlgebra zero(f, 2);
    zero.finalize();
    REQUIRE(verify_associativity(zero).ok);
}

TEST_CASE("verify_associativity reports a witness triple") {
    auto f = FieldDescriptor::rationals();
    auto bad = matrix_algebra(f, 2);
    bad.set_sc(0, 0, 0, q(0));  // e11*e11 = 0 breaks (e11 e11) e11 = e11 (e11 e11)? no:
    // both sides become 0 there; it breaks (e11 e11) e12 = e11 (e11 e12) = e12.
    bad.finalize();
    auto rep = verify_associativity(bad);
    REQUIRE_FALSE(rep.ok);
    // Recheck the reported triple directly.
    auto x = bad.basis_element(rep.i), y = bad.basis_element(rep.j), z = bad.basis_element(rep.k);
    REQUIRE(multiply(multiply(x, y), z) != multiply(x, multiply(y, z)));
}

TEST_CASE("multiply is bilinear and associative on random triples") {
    std::mt19937_64 rng(101);
    for (FieldDescriptor f : {FieldDescriptor::rationals(), FieldDescriptor::prime_field(2)}) {
        auto a = matrix_over_local(f, 2, 2);
        REQUIRE(verify_associativity(a).ok);
        for (int round = 0; round < 40; ++round) {
            auto x = a.element(random_vector(f, a.dim(), rng));
            auto y = a.element(random_vector(f, a.dim(), rng));
            auto z = a.element(random_vector(f, a.dim(), rng));
            Scalar c = random_scalar(f, rng);
            REQUIRE(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
            REQUIRE(multiply(x + y, z) == multiply(x, z) + multiply(y, z));
            REQUIRE(multiply(c * x, y) == c * multiply(x, y));
            REQUIRE(multiply(x, c * y) == c * multiply(x, y));
        }
    }
}

TEST_CASE("unitalize adjoins a two-sided identity") {
    auto f = FieldDescriptor::rationals();

    // dim-1 zero algebra becomes F[t]/(t^2): basis {t, 1}.
    StructureAlgebra z1(f, 1);
    z1.finalize();
    auto hat = unitalize(z1);
    REQUIRE(hat.hat->dim() == 2);
    auto t = hat.hat->basis_element(0);
    REQUIRE(multiply(t, t).is_zero());
    REQUIRE(multiply(hat.one(), t) == t);
    REQUIRE(multiply(t, hat.one()) == t);
    REQUIRE(multiply(hat.one(), hat.one()) == hat.one());

    // M2: the adjoined unit is the identity; the internal unit of M2 stays an
    // idempotent but is not the adjoined one.
    auto m2 = matrix_algebra(f, 2);
    auto h2 = unitalize(m2);
    REQUIRE(h2.hat->dim() == 5);
    REQUIRE(verify_associativity(*h2.hat).ok);
    auto internal = h2.embed((m2.basis_element(0) + m2.basis_element(3)).coords());
    REQUIRE(multiply(internal, internal) == internal);
    REQUIRE(internal != h2.one());
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        auto x = h2.hat->element(random_vector(f, 5, rng));
        REQUIRE(multiply(h2.one(), x) == x);
        REQUIRE(multiply(x, h2.one()) == x);
    }
}

TEST_CASE("image of A is an ideal of codimension one in the unital extension") {
    auto f = FieldDescriptor::rationals();
    auto a = triangular_algebra(f, 2);
    auto hat = unitalize(a);
    Subspace image = Subspace::span_of(
        f, {hat.embed(a.basis_element(0).coords()).coords(),
            hat.embed(a.basis_element(1).coords()).coords(),
            hat.embed(a.basis_element(2).coords()).coords()},
        4);
    REQUIRE(image.dim() == hat.hat->dim() - 1);
    Subspace closure = ideal_closure(image, *hat.hat);
    REQUIRE(closure == image);
}

TEST_CASE("subspace products") {
    auto f = FieldDescriptor::rationals();
    auto m2 = matrix_algebra(f, 2);

    // sl2 basis: e12, e21, e11 - e22.
    auto sl2 = Subspace::span_of(f,
                                 {m2.basis_element(1).coords(), m2.basis_element(2).coords(),
                                  (m2.basis_element(0) - m2.basis_element(3)).coords()},
                                 4);
    REQUIRE(subspace_product(sl2, sl2, m2) == Subspace::full(f, 4));
    REQUIRE(subspace_product(Subspace::zero(f, 4), sl2, m2) == Subspace::zero(f, 4));

    auto t2 = triangular_algebra(f, 2);
    auto e12span = Subspace::span_of(f, {t2.basis_element(1).coords()}, 3);
    REQUIRE(subspace_product(e12span, e12span, t2) == Subspace::zero(f, 3));

    REQUIRE(algebra_square(m2) == Subspace::full(f, 4));
    StructureAlgebra zero2(f, 2);
    zero2.finalize();
    REQUIRE(algebra_square(zero2) == Subspace::zero(f, 2));
}

TEST_CASE("subspace_product is monotone") {
    std::mt19937_64 rng(31);
    auto f = FieldDescriptor::prime_field(3);
    auto a = matrix_over_local(f, 2, 2);
    for (int round = 0; round < 20; ++round) {
        auto rand_space = [&](int k) {
            std::vector<std::vector<Scalar>> rows;
            for (int i = 0; i < k; ++i) rows.push_back(random_vector(f, a.dim(), rng));
            return Subspace::span_of(f, rows, a.dim());
        };
        Subspace u = rand_space(3), v = rand_space(3);
        Subspace bigger = sum(u, rand_space(2));
        REQUIRE(sum(subspace_product(u, v, a), subspace_product(bigger, v, a)) ==
                subspace_product(bigger, v, a));
    }
}

TEST_CASE("ideal closure examples") {
    auto f = FieldDescriptor::rationals();

    // Corner M2 inside M3 generates everything.
    auto m3 = matrix_algebra(f, 3);
    std::vector<std::vector<Scalar>> corner;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) corner.push_back(m3.basis_element(s * 3 + t).coords());
    REQUIRE(ideal_closure(Subspace::span_of(f, corner, 9), m3) == Subspace::full(f, 9));

    // span{e12} in T2 absorbs to itself.
    auto t2 = triangular_algebra(f, 2);
    auto e12span = Subspace::span_of(f, {t2.basis_element(1).coords()}, 3);
    REQUIRE(ideal_closure(e12span, t2) == e12span);

    REQUIRE(ideal_closure(Subspace::zero(f, 9), m3) == Subspace::zero(f, 9));
}

TEST_CASE("ideal closure is a fixed point and contains its generators") {
    std::mt19937_64 rng(53);
    auto f = FieldDescriptor::prime_field(2);
    auto a = matrix_over_local(f, 2, 2);
    for (int round = 0; round < 20; ++round) {
        std::vector<std::vector<Scalar>> rows;
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) rows.push_back(random_vector(f, a.dim(), rng));
        Subspace gen = Subspace::span_of(f, rows, a.dim());
        Subspace once = ideal_closure(gen, a);
        REQUIRE(once.contains(gen));
        REQUIRE(ideal_closure(once, a) == once);
        REQUIRE(subspace_product(Subspace::full(f, a.dim()), once, a).dim() <= once.dim() + 0);
        REQUIRE(once.contains(subspace_product(Subspace::full(f, a.dim()), once, a)));
        REQUIRE(once.contains(subspace_product(once, Subspace::full(f, a.dim()), a)));
    }
}
