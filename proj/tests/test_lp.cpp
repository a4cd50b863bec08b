#include <doctest.h>

#include <sstream>

#include "scg/error.hpp"
#include "scg/lp_oracle.hpp"
#include "scg/simplex.hpp"
#include "support.hpp"

using namespace scg;
using testing::q;

TEST_CASE("simplex on a small covering program") {
  // minimize x + y subject to x + 2y >= 2, 3x + y >= 3
  LinearProgram lp;
  lp.objective = {1, 1};
  lp.nonnegative = {true, true};
  lp.rows = {{1, 2}, {3, 1}};
  lp.rhs = {2, 3};
  auto s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == q(7, 5));
  CHECK(s.x[0] == q(4, 5));
  CHECK(s.x[1] == q(3, 5));
}

TEST_CASE("simplex detects infeasible and unbounded programs") {
  LinearProgram infeasible;
  infeasible.objective = {1};
  infeasible.nonnegative = {true};
  infeasible.rows = {{-1}};
  infeasible.rhs = {1};
  CHECK(solve(infeasible).status == LpStatus::Infeasible);

  LinearProgram unbounded;
  unbounded.objective = {-1};
  unbounded.nonnegative = {true};
  unbounded.rows = {{1}};
  unbounded.rhs = {1};
  CHECK(solve(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("free variables") {
  // minimize x with x >= -3, x free
  LinearProgram lp;
  lp.objective = {1};
  lp.nonnegative = {false};
  lp.rows = {{1}};
  lp.rhs = {-3};
  auto s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x[0] == -3);
}

TEST_CASE("degenerate program terminates") {
  LinearProgram lp;
  lp.objective = {-1, -1, 0};
  lp.nonnegative = {true, true, true};
  lp.rows = {{-1, 0, 0}, {0, -1, 0}, {-1, -1, 0}, {0, 0, 1}, {-1, 1, 0}};
  lp.rhs = {-1, -1, -1, 0, 0};
  auto s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == -1);
}

TEST_CASE("dual program size and layout") {
  auto lp = build_dual_lp(mc_rule<Rational>(3), 3);
  CHECK(lp.rows.size() == 63);
  CHECK(lp.rows.front().size() == 4);
  for (std::size_t c = 0; c < lp.rows.size(); ++c) {
    const auto& sig = lp.signatures[c];
    CHECK((sig.br_set | sig.opt_set) != 0);
    CHECK(lp.rhs[c] == (sig.opt_set ? 1 : 0));
  }
  auto p = lp.program();
  CHECK_FALSE(p.nonnegative[0]);
  CHECK(p.nonnegative[1]);
}

TEST_CASE("dual program agrees with the closed form") {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (const auto& f : testing::named_rules(n)) {
      CHECK_MESSAGE(lp_pob(f, n) == pob_one_round(f, n), f.name() << " n=" << n);
    }
  }
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    auto f = testing::random_nonincreasing_rule(rng, n);
    REQUIRE(lp_pob(f, n) == pob_one_round(f, n));
  }
}

TEST_CASE("serial and parallel dual construction agree") {
  auto f = testing::poa_rule_exact(6);
  auto a = build_dual_lp(f, 6, Execution::Serial);
  auto b = build_dual_lp(f, 6, Execution::Parallel);
  CHECK(a.rows == b.rows);
  CHECK(a.rhs == b.rhs);
}

TEST_CASE("dual program rejects large agent counts") {
  CHECK_THROWS_AS(build_dual_lp(mc_rule<Rational>(9), 9), ResourceLimitError);
}

TEST_CASE("LP listing") {
  std::ostringstream out;
  write_lp(build_dual_lp(mc_rule<Rational>(2), 2), out);
  const auto text = out.str();
  CHECK(text.find("c1 [br={1} opt={}]") != std::string::npos);
  CHECK(text.find("bounds") != std::string::npos);
  CHECK(text.substr(text.size() - 4) == "end\n");
}
