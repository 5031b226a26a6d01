/*################################################################################
  ##
  ##   Copyright (C) 2024-2026 the optscale authors
  ##
  ##   This file is part of the optscale library.
  ##
  ##   Licensed under the Apache License, Version 2.0 (the "License");
  ##   you may not use this file except in compliance with the License.
  ##   You may obtain a copy of the License at
  ##
  ##       http://www.apache.org/licenses/LICENSE-2.0
  ##
  ##   Unless required by applicable law or agreed to in writing, software
  ##   distributed under the License is distributed on an "AS IS" BASIS,
  ##   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  ##   See the License for the specific language governing permissions and
  ##   limitations under the License.
  ##
  ################################################################################*/

#include "optscale/experiment_cli.hpp"

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optscale/diagnostics.hpp"
#include "optscale/mcmc_kernels.hpp"
#include "optscale/scaling_engine.hpp"
#include "optscale/support_transform.hpp"
#include "optscale/trace_io.hpp"

namespace optscale::cli {

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return out;
}

std::optional<LogitMap> map_for_target(const TargetDensity& t) {
    if (t.support().kind == Support::Kind::interval) {
        return logit_map_for(t);
    }
    return std::nullopt;
}

} // namespace

int thread_cap() {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) {
        cap = 1;
    }
    if (const char* env = std::getenv("OPTSCALE_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) {
                cap = v;
            }
        } catch (const std::exception&) {
            // Unparseable values fall back to the hardware count.
        }
    }
    return cap;
}

namespace {

// RFC 4180 quoting for fields that contain commas (the target specs do).
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (const char c : s) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace

int cmd_table1(const Table1Options& opt) {
    const auto rows = table1_rows(thread_cap());

    auto csv = open_or_throw(opt.out);
    csv << "proposal,target,ell_star,fisher,ell_opt,alpha_opt,conjecture_only\n";
    csv << std::setprecision(12);
    for (const auto& r : rows) {
        csv << csv_field(r.proposal) << "," << csv_field(r.target) << ","
            << r.ell_star << "," << r.fisher << "," << r.ell_opt << ","
            << r.alpha_opt << "," << (r.conjecture_only ? 1 : 0) << "\n";
    }
    if (!csv) {
        throw std::runtime_error("I/O failure while writing: " + opt.out);
    }

    std::cout << std::fixed << std::setprecision(3);
    for (const auto& r : rows) {
        std::cout << r.proposal << " on " << r.target << ": ell_opt="
                  << r.ell_opt << " alpha_opt=" << r.alpha_opt
                  << (r.conjecture_only ? " (conjectured)" : "") << "\n";
    }
    std::cout.unsetf(std::ios::fixed);
    return 0;
}

namespace {

// Streaming per-chain accumulator for the comparison experiment: keeps the
// first-coordinate series, the acceptance count, and the running ESJD sum
// without materializing full states.  When a map is set, chain states are
// pulled back through it first, so every diagnostic is reported on the
// target coordinates regardless of where the chain runs.
struct CompareAccum {
    std::optional<LogitMap> map;
    std::vector<double> first;
    std::vector<double> prev;
    double esjd_sum = 0.0;
    std::uint64_t n_acc = 0;
    std::uint64_t n = 0;

    std::vector<double> to_target(const std::vector<double>& s) const {
        if (!map) {
            return s;
        }
        std::vector<double> x(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            x[i] = map->inverse(s[i]);
        }
        return x;
    }

    void on_initial(const std::vector<double>& s) {
        prev = to_target(s);
        first.push_back(prev[0]);
    }
    void on_step(const std::vector<double>& s, bool accepted) {
        const std::vector<double> x = to_target(s);
        double step = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double diff = x[i] - prev[i];
            step += diff * diff;
        }
        esjd_sum += step;
        prev = x;
        first.push_back(x[0]);
        if (accepted) {
            ++n_acc;
        }
        ++n;
    }
};

struct CompareChainResult {
    double acceptance = 0.0;
    double esjd = 0.0;
    double ess = 0.0;
    double scale = 0.0;
    std::vector<double> acf;
};

CompareChainResult run_compare_chain(Algorithm algo, double ell, int d,
                                     std::uint64_t iters, std::uint64_t seed,
                                     std::uint64_t stream, int max_lag) {
    const TargetDensity component =
        TargetDensity::trunc_normal(0.0, 1.0, -1.0, 1.0);
    // The ell/sqrt(d) tuning is for the chain on the unbounded side of the
    // logit map, so the TMCMC comparison chain runs there; its states are
    // pulled back so every diagnostic lives on the target coordinates.
    // RWM's ell/(d log d) tuning is for the bounded coordinates directly.
    const ChainSpace space = algo == Algorithm::tmcmc
                                 ? ChainSpace::transformed
                                 : ChainSpace::original;
    const KernelConfig cfg{
        algo,
        ProposalFamily::cauchy(),
        {component, d},
        {algo == Algorithm::tmcmc ? ScaleSchedule::Kind::tmcmc_sqrt
                                  : ScaleSchedule::Kind::rwm_dlogd,
         ell, d},
        space};

    CompareAccum accum;
    if (space == ChainSpace::transformed) {
        accum.map = logit_map_for(component);
    }
    // Per-chain seeds are consecutive; the seed mix keeps the streams apart.
    run_chain_observe(cfg, iters, seed + stream, accum);

    CompareChainResult r;
    r.acceptance = static_cast<double>(accum.n_acc) /
                   static_cast<double>(accum.n);
    r.esjd = accum.esjd_sum / static_cast<double>(accum.n);
    r.ess = ess(accum.first);
    r.scale = cfg.schedule.resolve();
    r.acf = acf(accum.first, max_lag);
    return r;
}

} // namespace

int cmd_compare(const CompareOptions& opt) {
    if (opt.out_prefix.empty()) {
        throw std::invalid_argument("compare: --out-prefix is required");
    }
    if (opt.iters < static_cast<std::uint64_t>(opt.max_lag) + 2) {
        throw std::invalid_argument("compare: iters too small for the ACF lag range");
    }

    CompareChainResult tmcmc_res, rwm_res;
    std::exception_ptr fail;
    auto tmcmc_job = [&]() {
        tmcmc_res = run_compare_chain(Algorithm::tmcmc, opt.tmcmc_ell, opt.d,
                                      opt.iters, opt.seed, 0, opt.max_lag);
    };
    auto rwm_job = [&]() {
        rwm_res = run_compare_chain(Algorithm::rwm, opt.rwm_ell, opt.d,
                                    opt.iters, opt.seed, 1, opt.max_lag);
    };
    if (thread_cap() >= 2) {
        std::thread worker([&]() {
            try {
                tmcmc_job();
            } catch (...) {
                fail = std::current_exception();
            }
        });
        rwm_job();
        worker.join();
        if (fail) {
            std::rethrow_exception(fail);
        }
    } else {
        tmcmc_job();
        rwm_job();
    }

    auto summary = open_or_throw(opt.out_prefix + "_summary.csv");
    summary << "algorithm,d,iters,ell,scale,acceptance,esjd,ess\n";
    summary << std::setprecision(12);
    summary << "tmcmc," << opt.d << "," << opt.iters << "," << opt.tmcmc_ell
            << "," << tmcmc_res.scale << "," << tmcmc_res.acceptance << ","
            << tmcmc_res.esjd << "," << tmcmc_res.ess << "\n";
    summary << "rwm," << opt.d << "," << opt.iters << "," << opt.rwm_ell << ","
            << rwm_res.scale << "," << rwm_res.acceptance << ","
            << rwm_res.esjd << "," << rwm_res.ess << "\n";
    if (!summary) {
        throw std::runtime_error("I/O failure while writing summary CSV");
    }

    auto acf_csv = open_or_throw(opt.out_prefix + "_acf.csv");
    acf_csv << "lag,acf_tmcmc,acf_rwm\n";
    acf_csv << std::setprecision(12);
    for (int k = 0; k <= opt.max_lag; ++k) {
        acf_csv << k << "," << tmcmc_res.acf[k] << "," << rwm_res.acf[k]
                << "\n";
    }
    if (!acf_csv) {
        throw std::runtime_error("I/O failure while writing ACF CSV");
    }

    std::cout << std::fixed << std::setprecision(3);
    std::cout << "tmcmc: acceptance=" << tmcmc_res.acceptance
              << " esjd=" << tmcmc_res.esjd << " ess=" << tmcmc_res.ess
              << "\n";
    std::cout << "rwm:   acceptance=" << rwm_res.acceptance
              << " esjd=" << rwm_res.esjd << " ess=" << rwm_res.ess << "\n";
    std::cout.unsetf(std::ios::fixed);
    return 0;
}

namespace {

struct TraceSink {
    TraceWriter& writer;
    std::uint64_t n_acc = 0;
    void on_initial(const std::vector<double>& x) { writer.write_state(x); }
    void on_step(const std::vector<double>& x, bool accepted) {
        writer.write_state(x);
        writer.write_accept(accepted);
        if (accepted) {
            ++n_acc;
        }
    }
};

} // namespace

int cmd_sample(const SampleOptions& opt) {
    if (opt.out.empty()) {
        throw std::invalid_argument("sample: --out is required");
    }

    Algorithm algorithm;
    if (opt.algorithm == "tmcmc") {
        algorithm = Algorithm::tmcmc;
    } else if (opt.algorithm == "rwm") {
        algorithm = Algorithm::rwm;
    } else {
        throw std::invalid_argument("sample: unknown algorithm: " +
                                    opt.algorithm);
    }
    const ProposalFamily proposal = ProposalFamily::parse(opt.proposal);
    const TargetDensity component = TargetDensity::parse(opt.target);

    ChainSpace space;
    if (opt.space == "original") {
        space = ChainSpace::original;
    } else if (opt.space == "transformed") {
        space = ChainSpace::transformed;
    } else {
        throw std::invalid_argument("sample: unknown space: " + opt.space);
    }

    ScaleSchedule::Kind kind = algorithm == Algorithm::tmcmc
                                   ? ScaleSchedule::Kind::tmcmc_sqrt
                                   : ScaleSchedule::Kind::rwm_dlogd;
    if (!opt.schedule.empty()) {
        if (opt.schedule == "tmcmc_sqrt") {
            kind = ScaleSchedule::Kind::tmcmc_sqrt;
        } else if (opt.schedule == "rwm_dlogd") {
            kind = ScaleSchedule::Kind::rwm_dlogd;
        } else {
            throw std::invalid_argument("sample: unknown schedule: " +
                                        opt.schedule);
        }
    }

    double ell = opt.ell;
    std::string ell_source = "explicit";
    if (ell <= 0.0) {
        const auto scaling =
            optimal_scaling(proposal, component, map_for_target(component));
        ell = scaling.ell_opt;
        ell_source = "computed";
    }

    const KernelConfig cfg{algorithm, proposal,
                           {component, opt.d},
                           {kind, ell, opt.d},
                           space};
    cfg.validate();

    TraceWriter writer(opt.out, static_cast<std::uint32_t>(opt.d), opt.iters,
                       opt.seed);
    TraceSink sink{writer};
    run_chain_observe(cfg, opt.iters, opt.seed, sink);
    writer.close();

    nlohmann::json meta;
    meta["algorithm"] = opt.algorithm;
    meta["proposal"] = cfg.proposal.name();
    meta["target"] = cfg.target.component.name();
    meta["d"] = opt.d;
    meta["iters"] = opt.iters;
    meta["seed"] = opt.seed;
    meta["ell"] = ell;
    meta["ell_source"] = ell_source;
    meta["schedule"] = kind == ScaleSchedule::Kind::tmcmc_sqrt ? "tmcmc_sqrt"
                                                               : "rwm_dlogd";
    meta["scale"] = cfg.schedule.resolve();
    meta["space"] = opt.space;
    meta["acceptance"] =
        opt.iters == 0 ? 0.0
                       : static_cast<double>(sink.n_acc) /
                             static_cast<double>(opt.iters);
    meta["conjecture_only"] = cfg.proposal.conjecture_only();

    auto side = open_or_throw(opt.out + ".json");
    side << meta.dump(2) << "\n";
    if (!side) {
        throw std::runtime_error("I/O failure while writing sidecar");
    }

    std::cout << std::fixed << std::setprecision(3);
    std::cout << "wrote " << opt.out << " acceptance="
              << meta["acceptance"].get<double>() << " scale="
              << cfg.schedule.resolve() << "\n";
    std::cout.unsetf(std::ios::fixed);
    return 0;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Diffusion-based optimal scaling for additive TMCMC and RWM"};
    app.require_subcommand(1);
    // One app-level config option; keys live under a [subcommand] section.
    // Subcommands fall through so "--config" may follow the subcommand name.
    app.set_config("--config", "",
                   "INI config file with a [subcommand] section");
    app.allow_config_extras(false);

    Table1Options t1;
    auto* table1 = app.add_subcommand(
        "table1", "Optimal scales and acceptance rates, 6 proposals x 2 targets");
    table1->fallthrough();
    table1->add_option("--out", t1.out, "Output CSV path")->required();

    CompareOptions cmp;
    auto* compare = app.add_subcommand(
        "compare", "TMCMC vs RWM comparison on the truncated normal target");
    compare->fallthrough();
    compare->add_option("--d", cmp.d, "Dimension")->check(CLI::PositiveNumber);
    compare->add_option("--iters", cmp.iters, "Iterations per chain");
    compare->add_option("--seed", cmp.seed, "Master seed");
    compare->add_option("--tmcmc-ell", cmp.tmcmc_ell, "TMCMC ell");
    compare->add_option("--rwm-ell", cmp.rwm_ell, "RWM ell");
    compare->add_option("--max-lag", cmp.max_lag, "ACF lag range")
        ->check(CLI::PositiveNumber);
    compare->add_option("--out-prefix", cmp.out_prefix, "Output CSV prefix")
        ->required();

    SampleOptions smp;
    auto* sample = app.add_subcommand("sample", "Run one chain to a trace file");
    sample->fallthrough();
    sample->add_option("--algorithm", smp.algorithm, "tmcmc | rwm");
    sample->add_option("--proposal", smp.proposal,
                       "gaussian | tN | cauchy | uniform01");
    sample->add_option("--target", smp.target,
                       "truncnormal(mu,sigma,a,b) | uniform(a,b) | normal(mu,sigma)");
    sample->add_option("--d", smp.d, "Dimension")->check(CLI::PositiveNumber);
    sample->add_option("--iters", smp.iters, "Iterations");
    sample->add_option("--seed", smp.seed, "Seed");
    sample->add_option("--ell", smp.ell,
                       "Scale constant; omit to use the computed optimum");
    sample->add_option("--schedule", smp.schedule, "tmcmc_sqrt | rwm_dlogd");
    sample->add_option("--space", smp.space, "original | transformed");
    sample->add_option("--out", smp.out, "Trace file path")->required();

    try {
        app.parse(argc, argv);
        if (table1->parsed()) {
            return cmd_table1(t1);
        }
        if (compare->parsed()) {
            return cmd_compare(cmp);
        }
        return cmd_sample(smp);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace optscale::cli
