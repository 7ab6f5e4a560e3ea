#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include "CLI11.hpp"
#include "srlnc/channel.hpp"
#include "srlnc/coding_types.hpp"
#include "srlnc/gap_experiment.hpp"
#include "srlnc/inner_bound.hpp"
#include "srlnc/outer_bound.hpp"
#include "srlnc/ray.hpp"
#include "srlnc/simulator.hpp"

namespace {

using namespace srlnc;

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw ChannelError("cannot open output file: " + path);
    return file;
}

ChannelSpec channel_from_flag(const std::string& path) {
    if (path.empty())
        throw ChannelError("--channel FILE is required for this command");
    return load_channel_file(path);
}

RegionProblem region_for_tag(const std::string& tag, const ChannelSpec& ch,
                             bool literal_eq45) {
    if (tag == "outer") {
        OuterOptions opt;
        opt.literal_eq45 = literal_eq45;
        return build_outer_lp(ch, opt);
    }
    if (tag == "inner-strong") {
        if (!is_strong_relaying(ch))
            std::cerr << "warning: channel is not strong-relaying; the strong-relaying "
                         "achievability LP is still well-defined\n";
        return build_inner_strong_lp(ch);
    }
    if (tag == "inner-general") return build_inner_general_lp(ch);
    return baseline_region_lp(scheme_from_tag(tag), ch);
}

void print_boundary(std::ostream& out, const RegionBoundary& b, const std::string& tag,
                    bool with_tag) {
    for (const BoundaryPoint& p : b) {
        if (with_tag) out << tag << ',';
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g", p.w1, p.w2, p.r1,
                      p.r2, p.objective);
        out << buf << '\n';
    }
}

int cmd_enumerate() {
    for (CodingType t : feasible_types()) std::cout << encode_type(t) << '\n';
    std::cout << "--\n";
    for (CodingType t : feasible_types_relay()) std::cout << encode_type(t) << '\n';
    return 0;
}

int cmd_region(const std::string& channel_path, const std::string& bound, int weights,
               bool all, bool literal_eq45, const std::string& out_path) {
    ChannelSpec ch = channel_from_flag(channel_path);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    auto grid = weight_grid(weights);
    if (all) {
        out << "bound,w1,w2,R1,R2,objective\n";
        const char* tags[] = {"scheme1", "scheme2", "scheme3", "scheme4",
                              "scheme5", "scheme6", "inner-strong", "outer"};
        for (const char* tag : tags)
            print_boundary(out, sweep_boundary(region_for_tag(tag, ch, literal_eq45), grid),
                           tag, true);
    } else {
        out << "w1,w2,R1,R2,objective\n";
        print_boundary(out, sweep_boundary(region_for_tag(bound, ch, literal_eq45), grid),
                       bound, false);
    }
    return 0;
}

int cmd_gap_cdf(int samples, const std::string& mode, uint64_t seed, int threads,
                const std::string& out_path) {
    GapMode m;
    if (mode == "strong-prop2")
        m = GapMode::strong_prop2;
    else if (mode == "arbitrary-prop3")
        m = GapMode::arbitrary_prop3;
    else
        throw ChannelError("mode must be strong-prop2 or arbitrary-prop3");
    GapSummary s = run_gap_experiment(samples, m, seed, threads);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "index,gap\n";
    for (size_t i = 0; i < s.sorted_gaps.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%zu,%.17g", i, s.sorted_gaps[i]);
        out << buf << '\n';
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "# samples,%d\n# solved,%d\n# skipped,%d\n", s.samples,
                  s.solved, s.skipped);
    out << buf;
    std::snprintf(buf, sizeof buf, "# fraction_below_0.08pct,%.17g\n", s.frac_below_008pct);
    out << buf;
    std::snprintf(buf, sizeof buf, "# fraction_below_0.04pct,%.17g\n", s.frac_below_004pct);
    out << buf;
    return 0;
}

int cmd_simulate(const std::string& channel_path, double r1, double r2, int64_t slots,
                 uint64_t seed, int prop, int64_t audit_period,
                 const std::string& trace_path) {
    ChannelSpec ch = channel_from_flag(channel_path);
    if (prop == 2 && !is_strong_relaying(ch))
        std::cerr << "warning: channel is not strong-relaying\n";
    SimConfig cfg;
    if (r1 <= 0 && r2 <= 0) {
        cfg.ch = ch;
        cfg.slots = slots;
        cfg.seed = seed;
        cfg.audit_period = audit_period;
    } else {
        RegionProblem p = prop == 2 ? build_inner_strong_lp(ch) : build_inner_general_lp(ch);
        SupportSolve sup = solve_with_support(p, r1, r2);
        if (!sup.feasible) {
            RaySolve ray = solve_rate_ray(p, r1, r2);
            std::cerr << "warning: requested rates exceed the achievable boundary (scale "
                      << ray.tau << "); the run is expected to fall short\n";
            double s = ray.tau * 0.999;
            sup = solve_with_support(p, r1 * s, r2 * s);
            if (!sup.feasible) throw SolverError("no feasible schedule for the requested rates");
        }
        cfg = config_from_lp_solution(ch, sup.lp, sup.sol.x, slots, 1.0, seed, audit_period);
        cfg.rate1 = r1;  // injection at the requested rates
        cfg.rate2 = r2;
    }
    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (!trace_path.empty()) {
        trace_file.open(trace_path);
        if (!trace_file) throw ChannelError("cannot open trace file: " + trace_path);
        trace = &trace_file;
    }
    SimReport rep = run(cfg, trace);
    std::cout << "slots: " << slots << "\n"
              << "rates: " << cfg.rate1 << " " << cfg.rate2 << "\n"
              << "packets: " << rep.m1 << " " << rep.m2 << "\n"
              << "decoded bookkeeping: " << rep.decoded1 << " " << rep.decoded2 << "\n"
              << "decoded rank-check: " << rep.rank_decoded1 << " " << rep.rank_decoded2
              << "\n"
              << "bookkeeping complete: " << (rep.bookkeeping_complete ? "yes" : "no") << "\n"
              << "rank complete: " << (rep.rank_complete ? "yes" : "no") << "\n"
              << "views agree: " << (rep.views_agree ? "yes" : "no") << "\n"
              << "used slots: " << rep.used_slots << "\n"
              << "idle slots: " << rep.idle_slots << "\n"
              << "audits passed: " << rep.audits_passed << "\n";
    return 0;
}

int cmd_dump_lp(const std::string& channel_path, const std::string& bound,
                bool literal_eq45, const std::string& out_path) {
    ChannelSpec ch = channel_from_flag(channel_path);
    RegionProblem p = region_for_tag(bound, ch, literal_eq45);
    // Sum-rate objective so the dumped file is solvable as-is.
    p.lp.clear_objective();
    p.lp.set_objective(p.r1_var, 1.0);
    p.lp.set_objective(p.r2_var, 1.0);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    write_lp_format(p.lp, out, p.tag + " rate-region LP");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LNC capacity bounds and achievability simulation for the "
                 "two-flow smart-repeater erasure network"};
    app.require_subcommand(1);

    auto* enumerate = app.add_subcommand("enumerate-types", "list feasible coding types");

    std::string channel_path, bound = "outer", out_path, mode = "strong-prop2", trace_path;
    std::string rates = "0,0";
    int weights = 33, samples = 100, prop = 2;
    int threads = int(std::thread::hardware_concurrency());
    int64_t slots = 100000, audit_period = 0;
    uint64_t seed = 1;
    bool all = false, literal_eq45 = false;

    auto* region = app.add_subcommand("region", "sweep a rate-region boundary");
    region->add_option("--channel", channel_path, "channel spec file");
    region->add_option("--bound", bound,
                       "outer | inner-strong | inner-general | scheme1..scheme6");
    region->add_option("--weights", weights, "number of weight directions");
    region->add_flag("--all", all, "emit all eight comparison curves");
    region->add_flag("--literal-eq45", literal_eq45,
                     "use the alternative y8=y11 decodability pairing of the outer bound");
    region->add_option("--out", out_path, "output CSV (default stdout)");

    auto* gap = app.add_subcommand("gap-cdf", "outer/inner relative-gap experiment");
    gap->add_option("--samples", samples, "number of sampled channels");
    gap->add_option("--mode", mode, "strong-prop2 | arbitrary-prop3");
    gap->add_option("--seed", seed, "base RNG seed");
    gap->add_option("--threads", threads, "worker threads");
    gap->add_option("--out", out_path, "output CSV (default stdout)");

    auto* sim = app.add_subcommand("simulate", "packet-level achievability run");
    sim->add_option("--channel", channel_path, "channel spec file");
    sim->add_option("--rates", rates, "R1,R2 in packets/slot");
    sim->add_option("--slots", slots, "time slots");
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--prop", prop, "2 = strong-relaying scheme, 3 = general scheme")
        ->check(CLI::IsMember({2, 3}));
    sim->add_option("--audit-period", audit_period, "slots between invariant audits");
    sim->add_option("--trace", trace_path, "per-slot movement trace CSV");

    auto* dump = app.add_subcommand("dump-lp", "write a bound LP in LP text format");
    dump->add_option("--channel", channel_path, "channel spec file");
    dump->add_option("--bound", bound, "outer | inner-strong | inner-general");
    dump->add_flag("--literal-eq45", literal_eq45,
                   "use the alternative y8=y11 decodability pairing of the outer bound");
    dump->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (enumerate->parsed()) return cmd_enumerate();
        if (region->parsed())
            return cmd_region(channel_path, bound, weights, all, literal_eq45, out_path);
        if (gap->parsed()) return cmd_gap_cdf(samples, mode, seed, threads, out_path);
        if (sim->parsed()) {
            double r1 = 0, r2 = 0;
            if (std::sscanf(rates.c_str(), "%lf,%lf", &r1, &r2) != 2)
                throw ChannelError("--rates expects R1,R2");
            return cmd_simulate(channel_path, r1, r2, slots, seed, prop, audit_period,
                                trace_path);
        }
        if (dump->parsed()) return cmd_dump_lp(channel_path, bound, literal_eq45, out_path);
    } catch (const ChannelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
