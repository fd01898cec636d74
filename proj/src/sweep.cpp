#include "qar/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "qar/negf.hpp"
#include "qar/qubit_me.hpp"
#include "qar/resonator_me.hpp"

namespace qar {

std::size_t SweepResult::failures() const
{
    std::size_t n = 0;
    for (const auto& r : rows)
        if (!r.error.empty()) ++n;
    return n;
}

std::vector<std::string> diagnostic_names(SolverKind k)
{
    switch (k) {
        case SolverKind::QubitZZ:
        case SolverKind::QubitLocal: return {"p0", "p1", "p2", "pd"};
        case SolverKind::QubitGlobal: return {"p0", "p_plus", "p_minus", "pd"};
        case SolverKind::ResonatorMe: return {"mean_n1", "mean_n2"};
        case SolverKind::Negf: return {"mean_n1", "mean_n2", "iterations", "residual"};
    }
    return {};
}

PointResult evaluate_point(const RunConfig& cfg, const Point& p)
{
    const BathSet baths = cfg.baths_at(p);
    PointResult r;
    switch (cfg.solver) {
        case SolverKind::QubitZZ:
        case SolverKind::QubitLocal:
        case SolverKind::QubitGlobal: {
            const QubitSystem sys{p.eps1, p.eps2, p.delta_z, p.delta_x};
            const QubitSolution s = cfg.solver == SolverKind::QubitZZ ? solve_zz(sys, baths)
                : cfg.solver == SolverKind::QubitLocal                 ? local_me_solve(sys, baths)
                                                                        : global_me_solve(sys, baths);
            r.current_c = s.current_c;
            r.diagnostics.assign(s.populations.data(), s.populations.data() + 4);
            break;
        }
        case SolverKind::ResonatorMe: {
            const ResonatorSystem sys{p.eps1, p.eps2, p.delta_z, static_cast<std::size_t>(p.n1),
                                      static_cast<std::size_t>(p.n2)};
            const ResonatorSolution s = resonator_solve(sys, baths);
            r.current_c = s.current_c;
            r.diagnostics = {s.mean_n1, s.mean_n2};
            break;
        }
        case SolverKind::Negf: {
            const NegfSystem sys{p.eps1, p.eps2, p.delta_z};
            const NegfResult s = negf_solve(sys, baths, cfg.negf);
            r.current_c = heat_current_C_negf(s);
            r.diagnostics = {s.state.n1, s.state.n2, static_cast<double>(s.state.iterations), s.state.residual};
            break;
        }
    }
    return r;
}

SweepResult run_sweep(const RunConfig& cfg, std::size_t jobs)
{
    validate(cfg);
    SweepResult res;
    res.axis_name = cfg.sweep.param;
    res.diagnostic_names = diagnostic_names(cfg.solver);
    const std::vector<double> axis = cfg.sweep.values();
    std::vector<std::vector<double>> series{{}};
    if (cfg.series) {
        res.series_names = cfg.series->params;
        series = cfg.series->values;
    }
    for (const auto& s : series)
        for (double a : axis) res.rows.push_back(SweepRow{a, s, std::nullopt, {}, {}});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < res.rows.size(); i = next++) {
            SweepRow& row = res.rows[i];
            Point p = cfg.base;
            p.set(cfg.sweep.param, row.axis);
            for (std::size_t k = 0; k < row.series.size(); ++k) p.set(res.series_names[k], row.series[k]);
            try {
                PointResult r = evaluate_point(cfg, p);
                row.current_c = r.current_c;
                row.diagnostics = std::move(r.diagnostics);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    jobs = std::max<std::size_t>(1, std::min(jobs, res.rows.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return res;
}

} // namespace qar
