#include <doctest.h>

#include <cmath>
#include <random>

#include "vhrd/analytic.hpp"
#include "vhrd/errors.hpp"
#include "vhrd/periodic.hpp"
#include "vhrd/spectral.hpp"

using namespace vhrd;

namespace {

struct CoupledSetup {
  ModelSpec spec;
  Grid grid;
  TimeGrid tg;
  ScalarOrbit host, vect;
};

CoupledSetup coupled_setup(const ModelSpec& spec, int n, int steps) {
  CoupledSetup s{spec, build_grid(spec.length, n), TimeGrid{spec.period, steps}, {}, {}};
  ScalarState ones{std::vector<double>(s.grid.node_count(), 1.0), 0.0};
  OrbitOptions opts;
  s.host = find_periodic_orbit(Species::host, s.spec, s.grid, ones, s.tg, opts);
  s.vect = find_periodic_orbit(Species::vector, s.spec, s.grid, ones, s.tg, opts);
  return s;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("period map: zero, linearity, constant-decay value") {
    ModelSpec spec = make_constant_model(1, 2, 1, 3, 3, 1, 1, 2);  // b1 - a1 = 1
    Grid grid = build_grid(1.0, 30);
    TimeGrid tg = make_time_grid(1.0, 1e-3);
    PeriodicLinearProblem problem =
        build_scalar_eigenproblem(spec, grid, tg, Species::host);

    std::vector<double> zero(problem.unknowns(), 0.0);
    CHECK(sup_norm(problem.poincare_step(zero, 1.0)) == 0.0);

    std::vector<double> v(problem.unknowns());
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& x : v) x = u(rng);
    double alpha = 1.7320508;
    std::vector<double> av = v;
    for (double& x : av) x *= alpha;
    std::vector<double> pv = problem.poincare_step(v, 1.0);
    std::vector<double> pav = problem.poincare_step(av, 1.0);
    for (std::size_t i = 0; i < pv.size(); ++i)
      CHECK(std::abs(pav[i] - alpha * pv[i]) <= 1e-12);

    std::vector<double> ones(problem.unknowns(), 1.0);
    std::vector<double> out = problem.poincare_step(ones, 1.0);
    for (double x : out) CHECK(x == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
  }

  TEST_CASE("scalar eigenvalue: constant coefficients") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    Grid grid = build_grid(1.0, 50);
    TimeGrid tg = make_time_grid(1.0, 2.5e-4);
    SpectralResult r = principal_eigenvalue_scalar(spec, grid, tg, Species::host);
    CHECK(r.converged);
    CHECK(r.eigenvalue == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(r.eigenvalue == doctest::Approx(-std::log(r.period_map_radius)));
    CHECK(r.residual <= 1e-6);
  }

  TEST_CASE("scalar eigenvalue: hostile boundary matches separation of variables") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    spec.bc_host = BoundaryCondition::dirichlet_bc();
    Grid grid = build_grid(1.0, 200);
    TimeGrid tg = make_time_grid(1.0, 1e-3);
    SpectralResult r = principal_eigenvalue_scalar(spec, grid, tg, Species::host);
    double exact = reference_eigenvalue_dirichlet(0.1, -1.0, 1.0);
    CHECK(r.eigenvalue == doctest::Approx(exact).epsilon(1e-2));
    CHECK(std::abs(r.eigenvalue - exact) <= 1e-4);
  }

  TEST_CASE("scalar eigenvalue: time-periodic rate averages out") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    spec.coeffs.a1 = CoefficientField(
        [](double, double t) { return 1.0 - std::cos(2.0 * M_PI * t) + 1.0; }, 1.0);
    spec.coeffs.b1 = CoefficientField::constant(1.0);
    // b - a = -1 + cos(2 pi t); the principal eigenvalue is the time average
    Grid grid = build_grid(1.0, 30);
    TimeGrid tg = make_time_grid(1.0, 2.5e-4);
    SpectralResult r = principal_eigenvalue_scalar(spec, grid, tg, Species::host);
    CHECK(r.eigenvalue == doctest::Approx(-1.0).epsilon(1e-3));
  }

  TEST_CASE("eigenfunction is positive and sup-normalized") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    spec.bc_host = BoundaryCondition::dirichlet_bc();
    Grid grid = build_grid(1.0, 40);
    TimeGrid tg = make_time_grid(1.0, 1e-3);
    SpectralOptions opts;
    opts.keep_eigenfunction = true;
    SpectralResult r = principal_eigenvalue_scalar(spec, grid, tg, Species::host, opts);
    REQUIRE(static_cast<int>(r.eigenfunction.size()) == tg.steps_per_period + 1);
    double sup = 0.0;
    for (const auto& level : r.eigenfunction) {
      CHECK(level[0].front() == 0.0);
      CHECK(level[0].back() == 0.0);
      for (int i = 1; i + 1 < grid.node_count(); ++i) {
        CHECK(level[0][i] > 0.0);
        sup = std::max(sup, level[0][i]);
      }
    }
    CHECK(sup == doctest::Approx(1.0));
  }

  TEST_CASE("start-vector independence") {
    ModelSpec spec =
        make_parametric_family(HeterogeneityParams{0.5, 0.5, 0.5, 0.5, 0, 0, 0, 0});
    Grid grid = build_grid(1.0, 40);
    TimeGrid tg = make_time_grid(1.0, 1e-3);
    PeriodicLinearProblem problem =
        build_scalar_eigenproblem(spec, grid, tg, Species::host);
    SpectralOptions opts;
    std::vector<double> bumpy(problem.unknowns());
    for (int i = 0; i < problem.unknowns(); ++i)
      bumpy[i] = 1.0 + 0.7 * std::sin(0.3 * i) * std::sin(0.3 * i);
    SpectralResult a = principal_eigenvalue(problem, 1.0, opts);
    SpectralResult b = principal_eigenvalue(problem, 1.0, opts, &bumpy);
    CHECK(std::abs(a.eigenvalue - b.eigenvalue) <= 1e-8);
  }

  TEST_CASE("coupled eigenvalue: constant-case closed forms") {
    // baseline: lambda = (5 - sqrt(1 + 24))/2 = 0
    CoupledSetup base =
        coupled_setup(make_constant_model(2, 1, 1, 3, 3, 2, 1, 2), 40, 4000);
    SpectralResult lam0 = principal_eigenvalue_coupled(base.spec, base.grid, base.tg,
                                                       base.host, base.vect, 1.0);
    CHECK(std::abs(lam0.eigenvalue) <= 1e-3);

    // b2 = 1 instead: lambda = (5 - 7)/2 = -1
    CoupledSetup endemic =
        coupled_setup(make_constant_model(2, 1, 1, 3, 3, 1, 1, 2), 40, 4000);
    SpectralResult lam1 = principal_eigenvalue_coupled(endemic.spec, endemic.grid,
                                                       endemic.tg, endemic.host,
                                                       endemic.vect, 1.0);
    CHECK(lam1.eigenvalue == doctest::Approx(-1.0).epsilon(1.5e-3));

    // decoupling limit: the smaller of the two uncoupled decay eigenvalues
    SpectralResult far = principal_eigenvalue_coupled(base.spec, base.grid, base.tg,
                                                      base.host, base.vect, 1e9);
    CHECK(far.eigenvalue == doctest::Approx(2.0).epsilon(1e-3));
  }

  TEST_CASE("coupled eigenvalue is nondecreasing in mu") {
    for (const ModelSpec& spec :
         {make_constant_model(2, 1, 1, 3, 3, 1, 1, 2),
          make_parametric_family(HeterogeneityParams{0.5, 0.5, 0.5, 0.5, 0, 0, 0, 0}),
          make_parametric_family(HeterogeneityParams{0.3, -0.5, 0.2, 0.6, 0.4, 0.2, -0.3, 0.1})}) {
      CoupledSetup s = coupled_setup(spec, 30, 500);
      double previous = -1e300;
      for (double mu : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        double lam = principal_eigenvalue_coupled(s.spec, s.grid, s.tg, s.host, s.vect, mu)
                         .eigenvalue;
        CHECK(lam >= previous - 1e-12);
        previous = lam;
      }
    }
  }

  TEST_CASE("scalar reproduction numbers: constants are exact at the root") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 2, 1, 2);
    Grid grid = build_grid(1.0, 30);
    TimeGrid tg = make_time_grid(1.0, 1e-3);
    R0Result r01 = basic_reproduction_scalar(spec, grid, tg, Species::host);
    R0Result r02 = basic_reproduction_scalar(spec, grid, tg, Species::vector);
    CHECK(r01.value == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(r02.value == doctest::Approx(1.5).epsilon(1e-5));
    CHECK(r01.bracket_lo <= r01.value);
    CHECK(r01.bracket_hi >= r01.value);
    CHECK(r01.sign_consistent);

    // threshold case: a = b gives R0 = 1 and zeta = 0 simultaneously
    ModelSpec thr = make_constant_model(2, 2, 1, 3, 3, 2, 1, 2);
    R0Result r = basic_reproduction_scalar(thr, grid, tg, Species::host);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-5));
    SpectralResult z = principal_eigenvalue_scalar(thr, grid, tg, Species::host);
    CHECK(std::abs(z.eigenvalue) <= 1e-9);
  }

  TEST_CASE("reproduction number requires a nontrivial death rate") {
    ModelSpec spec = make_constant_model(2, 0, 1, 3, 3, 2, 1, 2);
    Grid grid = build_grid(1.0, 20);
    TimeGrid tg = make_time_grid(1.0, 1e-2);
    CHECK_THROWS_AS(basic_reproduction_scalar(spec, grid, tg, Species::host),
                    ValidationError);
  }

  TEST_CASE("coupled reproduction number: closed forms") {
    CoupledSetup base =
        coupled_setup(make_constant_model(2, 1, 1, 3, 3, 2, 1, 2), 30, 1000);
    R0Result r0 = basic_reproduction_coupled(base.spec, base.grid, base.tg, base.host,
                                             base.vect);
    CHECK(r0.value == doctest::Approx(1.0).epsilon(1e-5));

    CoupledSetup endemic =
        coupled_setup(make_constant_model(2, 1, 1, 3, 3, 1, 1, 2), 30, 1000);
    R0Result r0e = basic_reproduction_coupled(endemic.spec, endemic.grid, endemic.tg,
                                              endemic.host, endemic.vect);
    CHECK(r0e.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
    CHECK(r0e.sign_consistent);
    CHECK(r0e.lambda_at_one < 0.0);
  }

  TEST_CASE("sign equivalences on random heterogeneous draws") {
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    int accepted = 0;
    for (int draw = 0; draw < 40 && accepted < 10; ++draw) {
      HeterogeneityParams p{u(rng), u(rng), u(rng), u(rng),
                            u(rng), u(rng), u(rng), u(rng)};
      ModelSpec spec = make_parametric_family(p);
      Grid grid = build_grid(1.0, 30);
      TimeGrid tg{1.0, 500};
      R0Result r01 = basic_reproduction_scalar(spec, grid, tg, Species::host);
      R0Result r02 = basic_reproduction_scalar(spec, grid, tg, Species::vector);
      if (r01.value <= 1.05 || r02.value <= 1.05) continue;
      SpectralResult z1 = principal_eigenvalue_scalar(spec, grid, tg, Species::host);
      SpectralResult z2 = principal_eigenvalue_scalar(spec, grid, tg, Species::vector);
      CHECK((r01.value > 1.0) == (z1.eigenvalue < 0.0));
      CHECK((r02.value > 1.0) == (z2.eigenvalue < 0.0));

      CoupledSetup s = coupled_setup(spec, 30, 500);
      R0Result r0 = basic_reproduction_coupled(s.spec, s.grid, s.tg, s.host, s.vect);
      if (std::abs(r0.value - 1.0) <= 1e-3) continue;
      CHECK((r0.value > 1.0) == (r0.lambda_at_one < 0.0));
      ++accepted;
    }
    CHECK(accepted >= 5);
  }

  TEST_CASE("power iteration respects its iteration cap") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    Grid grid = build_grid(1.0, 20);
    TimeGrid tg = make_time_grid(1.0, 1e-2);
    PeriodicLinearProblem problem =
        build_scalar_eigenproblem(spec, grid, tg, Species::host);
    SpectralOptions opts;
    opts.power.max_iterations = 1;
    opts.power.radius_tol = 1e-300;
    CHECK_THROWS_AS(principal_eigenvalue(problem, 1.0, opts), NonConvergenceError);
  }

  TEST_CASE("non-cooperative coupling is rejected") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    spec.coeffs.l1 = CoefficientField(
        [](double x, double) { return x < 0.5 ? 1.0 : -0.5; }, 1.0);
    CoupledSetup s = coupled_setup(make_constant_model(2, 1, 1, 3, 3, 1, 1, 2), 20, 100);
    CHECK_THROWS_AS(
        build_coupled_problem(spec, s.grid, s.tg, s.host, s.vect),
        ValidationError);
  }

  TEST_CASE("eigen step size bound against strong negative decay") {
    // b - a = -15 needs dt < 1/15
    ModelSpec spec = make_constant_model(16, 1, 1, 3, 3, 1, 1, 2);
    Grid grid = build_grid(1.0, 20);
    TimeGrid tg = make_time_grid(1.0, 0.1);
    CHECK_THROWS_AS(build_scalar_eigenproblem(spec, grid, tg, Species::host),
                    NumericsError);
  }
}
