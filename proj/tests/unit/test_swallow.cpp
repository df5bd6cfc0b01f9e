#include <doctest.h>

#include <Eigen/SVD>

#include "../support.hpp"
#include "tnc/ensemble.hpp"
#include "tnc/error.hpp"
#include "tnc/swallow.hpp"

using namespace tnc;
using tnc::testing::rel_diff;

TEST_SUITE("contract-exact") {

TEST_CASE("plan on the (2,2) torus") {
  const Graph g = build_torus(2, 2);
  const auto plan = plan_swallowing(g, identity_order(4));
  CHECK(plan.k_sizes() == std::vector<std::size_t>{0, 2, 2, 4});
  CHECK(plan.peak_cut == 4);
  CHECK(plan.steps.back().F_next.empty());
}

TEST_CASE("plan on a path") {
  const Graph g = tnc::testing::path_graph(3);
  const auto fwd = plan_swallowing(g, {0, 1, 2});
  CHECK(fwd.k_sizes() == std::vector<std::size_t>{0, 1, 1});
  CHECK(fwd.peak_cut == 1);

  const auto rev = plan_swallowing(g, {2, 1, 0});
  CHECK(rev.k_sizes() == std::vector<std::size_t>{0, 1, 1});
  // mirrored roles: what is introduced first going forward is contracted last going back
  CHECK(fwd.steps[0].L == rev.steps[2].K);
  CHECK(fwd.steps[2].K == rev.steps[0].L);

  CHECK_THROWS(plan_swallowing(g, {0, 0, 1}));
  CHECK_THROWS(plan_swallowing(g, {0, 1}));
}

TEST_CASE("plan structural invariants") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_regular_multigraph(8, 3, seed);
    const auto plan = plan_swallowing(g, tnc::testing::random_order(8, seed));
    std::vector<int> contracted(static_cast<std::size_t>(g.num_edges()), 0);
    std::vector<int> introduced(static_cast<std::size_t>(g.num_edges()), -1);
    std::vector<int> cut;
    CHECK(plan.steps.front().K.empty());
    CHECK(plan.steps.front().J.empty());
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
      const auto& s = plan.steps[i];
      std::vector<int> f = s.K;
      f.insert(f.end(), s.J.begin(), s.J.end());
      std::sort(f.begin(), f.end());
      CHECK(f == cut);
      for (int e : s.K) {
        ++contracted[static_cast<std::size_t>(e)];
        CHECK(introduced[static_cast<std::size_t>(e)] >= 0);
        CHECK(introduced[static_cast<std::size_t>(e)] < static_cast<int>(i));
      }
      for (int e : s.L) introduced[static_cast<std::size_t>(e)] = static_cast<int>(i);
      for (int e : s.loops) ++contracted[static_cast<std::size_t>(e)];
      cut = s.F_next;
    }
    CHECK(cut.empty());
    for (int c : contracted) CHECK(c == 1);
  }
}

TEST_CASE("all-one networks") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = random_regular_multigraph(6, 4, seed);
    CHECK(swallow_contract(all_ones_network(g, 2)) == cplx{std::pow(2.0, g.num_edges())});
  }
  CHECK(swallow_contract(all_ones_network(build_torus(3, 4), 3)) == cplx{std::pow(3.0, 24)});
}

TEST_CASE("matches the reference oracle and is order-invariant") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto tn = tnc::testing::random_network(build_torus(2, 2), 2, seed);
    const cplx ref = contract_reference(tn);
    CHECK(rel_diff(swallow_contract(tn), ref) < 1e-10);
    for (std::uint64_t k = 0; k < 3; ++k) {
      const auto plan = plan_swallowing(tn, tnc::testing::random_order(4, seed * 10 + k));
      CHECK(rel_diff(swallow_contract(tn, plan), ref) < 1e-10);
    }
  }
  // self-loops and parallel edges
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = random_regular_multigraph(5, 4, seed + 100);
    const auto tn = tnc::testing::random_network(g, 2, seed);
    const cplx ref = contract_reference(tn);
    CHECK(rel_diff(swallow_contract(tn, plan_swallowing(tn, tnc::testing::random_order(5, seed))), ref) < 1e-10);
  }
}

TEST_CASE("self-loop is traced") {
  // one vertex, rank 2, a single self-loop: trace
  const Graph g({2}, {Edge{{0, 0}, {0, 1}}});
  const TensorNetwork tn(g, 2, {Tensor(2, 2, {1.0, 2.0, 3.0, 4.0})});
  CHECK(swallow_contract(tn) == cplx{5.0});
  CHECK(contract_reference(tn) == cplx{5.0});
}

TEST_CASE("column-major order on tori") {
  const Graph g = build_torus(2, 4);
  CHECK(plan_swallowing(g, column_major_order(g)).peak_cut <
        plan_swallowing(g, identity_order(8)).peak_cut);
  const auto tn = tnc::testing::random_network(g, 2, 17);
  CHECK(rel_diff(swallow_contract(tn, plan_swallowing(tn, column_major_order(g))),
                 swallow_contract(tn)) < 1e-10);
  CHECK(parse_order(g, "colmajor") == column_major_order(g));
  CHECK(parse_order(g, "3,2,1,0 4 5 6 7") == std::vector<int>{3, 2, 1, 0, 4, 5, 6, 7});
  CHECK_THROWS(parse_order(g, "a,b"));
}

TEST_CASE("state budget") {
  const auto tn = all_ones_network(build_torus(2, 4), 4);
  const auto plan = plan_swallowing(tn, identity_order(8));
  CHECK_THROWS_AS(swallow_contract(tn, plan, 1000), BudgetError);
}

TEST_CASE("operator shapes and norms") {
  const auto tn = tnc::testing::random_network(build_torus(2, 2), 3, 5);
  const auto plan = plan_swallowing(tn, identity_order(4));
  for (std::size_t i = 0; i < 4; ++i) {
    const auto op = swallowing_operator(tn, plan, i);
    CHECK(op.rows == tensor_size(static_cast<int>(plan.steps[i].L.size()), 3));
    CHECK(op.cols == tensor_size(static_cast<int>(plan.steps[i].K.size()), 3));
    // cross-check against the generic matricization and a dense SVD
    const auto m = matricize(tn.tensor(plan.steps[i].vertex), plan.steps[i].l_ports, plan.steps[i].k_ports);
    REQUIRE(m.size() == op.matrix.size());
    for (std::size_t k = 0; k < m.size(); ++k) CHECK(m[k] == op.matrix[k]);
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(op.rows), static_cast<Eigen::Index>(op.cols));
    double colmax = 0.0;
    for (std::size_t c = 0; c < op.cols; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < op.rows; ++r) {
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = op(r, c);
        s += std::abs(op(r, c));
      }
      colmax = std::max(colmax, s);
    }
    CHECK(op.norm1 == doctest::Approx(colmax).epsilon(1e-12));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    CHECK(op.norm2 == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
  }
}

TEST_CASE("norm identities on random matrices") {
  CounterRng rng(3, 3);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t r = 3 + static_cast<std::size_t>(trial), c = 4;
    const auto m = tnc::testing::random_entries(r * c, rng);
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i * c + j];
    CHECK(matrix_norm2(m, r, c) == doctest::Approx(Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues()(0)).epsilon(1e-10));
    CHECK(matrix_norm1(m, r, c) == doctest::Approx(a.cwiseAbs().colwise().sum().maxCoeff()).epsilon(1e-12));
  }
}

TEST_CASE("delta norms") {
  // column-stochastic tensors on a path
  const Graph g = tnc::testing::path_graph(3);
  const TensorNetwork st(g, 2,
                         {Tensor::vector({0.25, 0.75}), Tensor(2, 2, {0.5, 0.5, 0.1, 0.9}),
                          Tensor::vector({1.0, 1.0})});
  // last vertex: 1 x 2 operator whose columns sum to 1
  const auto d = delta_norms(st, plan_swallowing(st, {0, 1, 2}));
  CHECK(d.delta1 == doctest::Approx(1.0));

  const Graph single({0}, {});
  const TensorNetwork sc(single, 2, {Tensor::scalar({0.3, 0.4})});
  CHECK(delta_norms(sc, plan_swallowing(sc, {0})).delta1 == doctest::Approx(0.5));
  CHECK(swallow_contract(sc) == cplx{0.3, 0.4});

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto tn = sample_abs_gaussian_tn(build_torus(2, 2), 2, seed);
    const auto plan = plan_swallowing(tn, identity_order(4));
    CHECK(delta_norms(tn, plan).delta1 >= swallow_contract(tn, plan).real());
  }
}

}  // TEST_SUITE
