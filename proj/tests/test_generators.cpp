#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <qent/qent.hpp>

#include "test_support.hpp"

using namespace qent;
using test_support::random_hermitian;
using test_support::random_state;

namespace {
const Complex I{0.0, 1.0};

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
}  // namespace

TEST_CASE("pauli set", "[generators]") {
  const auto set = pauli_set();
  REQUIRE(set.local_dim == 2);
  REQUIRE(set.kind == GeneratorKind::pauli);
  REQUIRE(set.matrices.size() == 3);
  REQUIRE(set.complete());

  const auto& sx = set.matrices[0];
  const auto& sy = set.matrices[1];
  const auto& sz = set.matrices[2];

  Matrix zref(2, 2);
  zref << 1, 0, 0, -1;
  REQUIRE((sz - zref).norm() < 1e-15);
  REQUIRE(std::abs(sx(0, 1) - Complex(1, 0)) < 1e-15);
  REQUIRE(std::abs(sy(0, 1) - Complex(0, -1)) < 1e-15);
  REQUIRE(std::abs(sy(1, 0) - Complex(0, 1)) < 1e-15);

  for (const auto& g : set.matrices) {
    REQUIRE((g * g - Matrix::Identity(2, 2)).norm() < 1e-15);
    REQUIRE((g - g.adjoint()).norm() < 1e-15);
    REQUIRE(std::abs(g.trace()) < 1e-15);
  }
  REQUIRE((sx * sy - I * sz).norm() < 1e-15);
  REQUIRE((commutator(sx, sy) - 2.0 * I * sz).norm() < 1e-15);
}

TEST_CASE("spin sets", "[generators]") {
  SECTION("spin 1/2 reproduces half the Pauli matrices") {
    const auto spin = spin_set(0.5);
    const auto pauli = pauli_set();
    REQUIRE(spin.local_dim == 2);
    REQUIRE(spin.complete());
    for (int j = 0; j < 3; ++j) {
      REQUIRE((spin.matrices[j] - 0.5 * pauli.matrices[j]).norm() < 1e-15);
    }
  }

  SECTION("spin 1 matrices") {
    const auto set = spin_set(1.0);
    REQUIRE(set.local_dim == 3);
    REQUIRE_FALSE(set.complete());
    const auto& sx = set.matrices[0];
    const auto& sz = set.matrices[2];
    Matrix zref = Matrix::Zero(3, 3);
    zref(0, 0) = 1;
    zref(2, 2) = -1;
    REQUIRE((sz - zref).norm() < 1e-15);
    const double r2 = 1.0 / std::sqrt(2.0);
    REQUIRE(std::abs(sx(0, 1) - Complex(r2, 0)) < 1e-15);
    REQUIRE((sx * sx).trace().real() == Catch::Approx(2.0).margin(1e-14));
  }

  SECTION("angular momentum commutators") {
    for (double s : {0.5, 1.0, 1.5, 2.0}) {
      const auto set = spin_set(s);
      const auto& sx = set.matrices[0];
      const auto& sy = set.matrices[1];
      const auto& sz = set.matrices[2];
      REQUIRE((commutator(sx, sy) - I * sz).norm() < 1e-12);
      REQUIRE((commutator(sy, sz) - I * sx).norm() < 1e-12);
      REQUIRE((commutator(sz, sx) - I * sy).norm() < 1e-12);
      const Matrix casimir = sx * sx + sy * sy + sz * sz;
      REQUIRE((casimir - s * (s + 1) * Matrix::Identity(set.local_dim, set.local_dim)).norm() <
              1e-12);
    }
  }

  REQUIRE_THROWS_AS(spin_set(0.7), std::invalid_argument);
  REQUIRE_THROWS_AS(spin_set(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(spin_set(-1.0), std::invalid_argument);
}

TEST_CASE("su(n) sets", "[generators]") {
  SECTION("su(2) coincides with the Pauli matrices") {
    const auto sun = su_n_set(2);
    const auto pauli = pauli_set();
    REQUIRE(sun.matrices.size() == 3);
    for (int j = 0; j < 3; ++j) {
      REQUIRE((sun.matrices[j] - pauli.matrices[j]).norm() < 1e-15);
    }
  }

  SECTION("orthonormality and tracelessness") {
    for (int n : {2, 3, 4}) {
      const auto set = su_n_set(n);
      REQUIRE(static_cast<int>(set.matrices.size()) == n * n - 1);
      REQUIRE(set.complete());
      for (size_t i = 0; i < set.matrices.size(); ++i) {
        REQUIRE((set.matrices[i] - set.matrices[i].adjoint()).norm() < 1e-13);
        REQUIRE(std::abs(set.matrices[i].trace()) < 1e-13);
        for (size_t j = 0; j < set.matrices.size(); ++j) {
          const double expected = (i == j) ? 2.0 : 0.0;
          REQUIRE((set.matrices[i] * set.matrices[j]).trace().real() ==
                  Catch::Approx(expected).margin(1e-12));
        }
      }
    }
  }

  SECTION("diagonal members for n = 3") {
    const auto set = su_n_set(3);
    Matrix d1 = Matrix::Zero(3, 3);
    d1(0, 0) = 1;
    d1(1, 1) = -1;
    Matrix d2 = Matrix::Zero(3, 3);
    const double f = 1.0 / std::sqrt(3.0);
    d2(0, 0) = f;
    d2(1, 1) = f;
    d2(2, 2) = -2 * f;
    bool found1 = false;
    bool found2 = false;
    for (const auto& g : set.matrices) {
      if ((g - d1).norm() < 1e-13) found1 = true;
      if ((g - d2).norm() < 1e-13) found2 = true;
    }
    REQUIRE(found1);
    REQUIRE(found2);
  }

  SECTION("complete sets expand traceless Hermitian operators") {
    std::mt19937_64 rng(3);
    for (int n : {3, 4}) {
      const auto set = su_n_set(n);
      for (int rep = 0; rep < 10; ++rep) {
        Matrix h = random_hermitian(n, rng);
        h -= (h.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
        Matrix rebuilt = Matrix::Zero(n, n);
        for (const auto& g : set.matrices) {
          rebuilt += ((h * g).trace().real() / 2.0) * g;
        }
        REQUIRE((rebuilt - h).norm() < 1e-12);
      }
    }
  }

  REQUIRE_THROWS_AS(su_n_set(1), std::invalid_argument);
  REQUIRE_THROWS_AS(su_n_set(0), std::invalid_argument);
}

TEST_CASE("embedding local operators", "[generators]") {
  const CompositeSpace two_qubits({2, 2});
  const auto pauli = pauli_set();

  SECTION("explicit diagonal embeddings") {
    const Matrix z0 = embed(pauli.matrices[2], 0, two_qubits);
    const Matrix z1 = embed(pauli.matrices[2], 1, two_qubits);
    Vector d0(4), d1(4);
    d0 << 1, 1, -1, -1;
    d1 << 1, -1, 1, -1;
    REQUIRE((z0 - Matrix(d0.asDiagonal())).norm() < 1e-15);
    REQUIRE((z1 - Matrix(d1.asDiagonal())).norm() < 1e-15);
  }

  SECTION("embeddings of different factors commute") {
    std::mt19937_64 rng(5);
    const CompositeSpace space({2, 3});
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix a = embed(random_hermitian(2, rng), 0, space);
      const Matrix b = embed(random_hermitian(3, rng), 1, space);
      REQUIRE((a * b - b * a).norm() < 1e-12);
    }
  }

  SECTION("apply_local agrees with dense embedding") {
    std::mt19937_64 rng(9);
    const CompositeSpace space({2, 3, 2});
    for (int rep = 0; rep < 10; ++rep) {
      const auto psi = random_state({2, 3, 2}, rng);
      for (int ell = 0; ell < 3; ++ell) {
        const Matrix g = random_hermitian(space.dim(ell), rng);
        const Vector via_embed = embed(g, ell, space) * psi.amplitudes();
        const Vector via_stride = apply_local(g, ell, space, psi.amplitudes());
        REQUIRE((via_embed - via_stride).norm() < 1e-12);
      }
    }
  }

  REQUIRE_THROWS_AS(embed(Matrix::Identity(3, 3), 0, two_qubits), std::invalid_argument);
  REQUIRE_THROWS_AS(embed(Matrix::Identity(2, 2), 2, two_qubits), std::out_of_range);
}

TEST_CASE("per factor set selection", "[generators]") {
  const CompositeSpace mixed({2, 3});
  const auto spin_sets = sets_for(mixed, GeneratorKind::spin);
  REQUIRE(spin_sets.size() == 2);
  REQUIRE(spin_sets[0].spin == Catch::Approx(0.5));
  REQUIRE(spin_sets[1].spin == Catch::Approx(1.0));
  REQUIRE(spin_sets[0].complete());
  REQUIRE_FALSE(spin_sets[1].complete());

  const auto sun_sets = sets_for(mixed, GeneratorKind::su_n);
  REQUIRE(sun_sets[0].matrices.size() == 3);
  REQUIRE(sun_sets[1].matrices.size() == 8);

  REQUIRE_THROWS_AS(sets_for(mixed, GeneratorKind::pauli), std::invalid_argument);
  REQUIRE_NOTHROW(sets_for(CompositeSpace({2, 2, 2}), GeneratorKind::pauli));

  REQUIRE(to_string(GeneratorKind::pauli) == std::string("pauli"));
  REQUIRE(to_string(GeneratorKind::spin) == std::string("spin"));
  REQUIRE(to_string(GeneratorKind::su_n) == std::string("sun"));
}
