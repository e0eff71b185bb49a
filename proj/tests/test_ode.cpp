#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ecopattern/attractor.hpp"
#include "ecopattern/kinetics.hpp"
#include "ecopattern/ode.hpp"

#include <cmath>
#include <vector>

using namespace eco;

namespace {

// y' = y, y(0)=1: exact solution e^t, scalar smoke problem
const OdeRhs kExp = [](double, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = y[0];
};

OdeRhs kinetics_rhs(const Params& p) {
    return [p](double, const std::vector<double>& y, std::vector<double>& dy) {
        const Vec2 r = reaction_rates_raw(p, y[0], y[1]);
        dy[0] = r.x;
        dy[1] = r.y;
    };
}

const Params kOsc{7.0, 7.0, 0.0, 1.0, 0.95, 0.873};  // oscillatory kinetics

}  // namespace

TEST_CASE("fixed-step error decays at fifth order") {
    // halve dt four times; the global error on y'=y over [0,2] must shrink
    // with slope ~5 in the log-log sense (embedded pair's advancing order)
    std::vector<double> errs;
    for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
        const OdeResult r = integrate_fixed(kExp, {1.0}, 0.0, 2.0, dt);
        errs.push_back(std::fabs(r.y[0] - std::exp(2.0)));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
        const double slope = std::log2(errs[i - 1] / errs[i]);
        CHECK(slope > 4.5);
        CHECK(slope < 5.8);
    }
}

TEST_CASE("adaptive integration hits the requested tolerance") {
    OdeOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    const OdeResult r = integrate(kExp, {1.0}, 0.0, 5.0, opts);
    CHECK(r.status == OdeStatus::done);
    CHECK(r.t == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(r.y[0] == doctest::Approx(std::exp(5.0)).epsilon(1e-8));
    CHECK(r.n_steps > 10);
}

TEST_CASE("dense output interpolates inside accepted steps") {
    // compare the interpolant against exp(t) at points strictly inside steps
    OdeOptions opts;
    opts.rel_tol = 1e-9;
    double worst = 0;
    const OdeObserver obs = [&](const DenseSegment& seg, const std::vector<double>&, double) {
        for (int i = 1; i < 4; ++i) {
            const double t = seg.t0 + seg.h * i / 4.0;
            const double got = seg.eval_component(t, 0);
            worst = std::max(worst, std::fabs(got - std::exp(t)) / std::exp(t));
        }
        return true;
    };
    const OdeResult r = integrate(kExp, {1.0}, 0.0, 3.0, opts, obs);
    CHECK(r.status == OdeStatus::done);
    CHECK(worst < 1e-6);

    // eval() fills a full state vector identically to eval_component
    const OdeObserver obs2 = [&](const DenseSegment& seg, const std::vector<double>&, double) {
        std::vector<double> y(1);
        const double t = seg.t0 + 0.3 * seg.h;
        seg.eval(t, y);
        CHECK(y[0] == doctest::Approx(seg.eval_component(t, 0)).epsilon(1e-15));
        return true;
    };
    integrate(kExp, {1.0}, 0.0, 1.0, opts, obs2);
}

TEST_CASE("observer can halt the run") {
    OdeOptions opts;
    const OdeObserver obs = [](const DenseSegment&, const std::vector<double>& y, double) {
        return y[0] < 10.0;  // stop once the solution passes 10
    };
    const OdeResult r = integrate(kExp, {1.0}, 0.0, 10.0, opts, obs);
    CHECK(r.status == OdeStatus::halted);
    CHECK(r.t < 10.0);
    CHECK(r.y[0] >= 10.0);
}

TEST_CASE("step budget is enforced") {
    OdeOptions opts;
    opts.max_steps = 10;
    const OdeResult r = integrate(kinetics_rhs(kOsc), {0.3, 0.1}, 0.0, 1e4, opts);
    CHECK(r.status == OdeStatus::too_many_steps);
    CHECK(r.n_steps <= 10);
}

TEST_CASE("non-negativity enforcement") {
    SUBCASE("an invariant axis stays exactly on the axis") {
        OdeOptions opts;
        opts.enforce_nonnegative = true;
        const OdeResult r = integrate(kinetics_rhs(kOsc), {0.6, 0.0}, 0.0, 50.0, opts);
        CHECK(r.status == OdeStatus::done);
        CHECK(r.y[1] == 0.0);
        CHECK(r.y[0] == doctest::Approx(1.0).epsilon(1e-6));  // logistic limit
    }
    SUBCASE("a flow pushing through zero underflows instead of going negative") {
        const OdeRhs down = [](double, const std::vector<double>&, std::vector<double>& dy) {
            dy[0] = -1.0;
        };
        OdeOptions opts;
        opts.enforce_nonnegative = true;
        opts.max_steps = 200000;
        const OdeResult r = integrate(down, {0.5}, 0.0, 10.0, opts);
        CHECK(r.status != OdeStatus::done);
        CHECK(r.y[0] >= -1e-12);
    }
}

TEST_CASE("kinetics sampling helper") {
    const Trajectory tr = solve_ode(kOsc, {0.3, 0.1}, 30.0, 1e-10, 0.1);
    REQUIRE(!tr.t.empty());
    CHECK(tr.t.front() == 0.0);
    CHECK(tr.t.back() == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(tr.states.size() == tr.t.size());
    // uniform spacing except possibly the closing sample
    for (std::size_t i = 1; i + 1 < tr.t.size(); ++i)
        CHECK(tr.t[i] - tr.t[i - 1] == doctest::Approx(0.1).epsilon(1e-9));
    for (const State& s : tr.states) {
        CHECK(std::isfinite(s.u));
        CHECK(std::isfinite(s.v));
        CHECK(s.u >= 0.0);
        CHECK(s.v >= 0.0);
    }
    // the endpoint agrees with a direct adaptive run
    OdeOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    opts.enforce_nonnegative = true;
    const OdeResult direct = integrate(kinetics_rhs(kOsc), {0.3, 0.1}, 0.0, 30.0, opts);
    CHECK(tr.states.back().u == doctest::Approx(direct.y[0]).epsilon(1e-7));
    CHECK(tr.states.back().v == doctest::Approx(direct.y[1]).epsilon(1e-7));
}

TEST_CASE("tight and loose tolerances bracket the same trajectory") {
    const Trajectory tight = solve_ode(kOsc, {0.4, 0.2}, 40.0, 1e-12, 0.5);
    const Trajectory loose = solve_ode(kOsc, {0.4, 0.2}, 40.0, 1e-6, 0.5);
    REQUIRE(tight.t.size() == loose.t.size());
    double worst = 0;
    for (std::size_t i = 0; i < tight.t.size(); ++i)
        worst = std::max(worst, std::fabs(tight.states[i].u - loose.states[i].u));
    CHECK(worst < 1e-3);   // loose run still tracks
    CHECK(worst > 1e-14);  // but is genuinely a different numerical solution
    CHECK(tight.n_steps > loose.n_steps);
}
