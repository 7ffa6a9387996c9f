#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypercoverage/campaign.hpp"
#include "hypercoverage/coverage.hpp"
#include "hypercoverage/errors.hpp"
#include "hypercoverage/io.hpp"
#include "hypercoverage/orthogonal_array.hpp"
#include "hypercoverage/sampling.hpp"

namespace hypercoverage::cli {
namespace {

namespace fs = std::filesystem;

/// Flag combination rejected after parsing; maps to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SeedArgs {
    std::optional<std::uint64_t> seed;
    CLI::Option* option = nullptr;
};

void add_seed(CLI::App* cmd, SeedArgs& args) {
    args.option = cmd->add_option("--seed", args.seed,
                                  "master seed (falls back to HYPERCOVERAGE_SEED, then a fresh random seed)");
}

/// Explicit flag, then the environment, then a generated seed. The value is
/// always echoed and recorded so saved configs reproduce the run.
std::uint64_t resolve_seed(SeedArgs& args, std::ostream& out) {
    if (!args.seed) {
        if (const char* env = std::getenv("HYPERCOVERAGE_SEED"); env && *env) {
            try {
                std::size_t used = 0;
                args.seed = std::stoull(env, &used);
                if (env[used] != '\0') throw std::invalid_argument(env);
            } catch (const std::exception&) {
                throw UsageError(std::string("HYPERCOVERAGE_SEED is not an unsigned integer: ") + env);
            }
        } else {
            std::random_device rd;
            args.seed = (std::uint64_t{rd()} << 32) | rd();
        }
        args.option->add_result(std::to_string(*args.seed));
    }
    out << "seed: " << *args.seed << '\n';
    return *args.seed;
}

std::string render(const std::function<void(std::ostream&)>& write) {
    std::ostringstream ss;
    write(ss);
    return ss.str();
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw io::FormatError("cannot create output directory " + dir.string());
}

void save_config(const CLI::App& app, const std::string& path) {
    if (!path.empty()) io::write_file_atomic(path, app.config_to_str(false, false));
}

std::string verdict(bool v) { return v ? "true" : "false"; }

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
    std::string sampler = "lhs";
    std::optional<std::uint32_t> n, p, d, s;
    std::string oa_path, oa_meta;
    SeedArgs seed;
    std::string out, format = "csv", save_config;
};

int cmd_generate(const CLI::App& app, GenerateArgs& a, std::ostream& out, std::ostream& err) {
    if (!a.d && a.oa_path.empty()) throw UsageError("generate needs --d");
    std::optional<std::uint32_t> p_out;
    std::function<SampleMatrix(std::uint64_t)> make;
    std::function<void(const SampleMatrix&, std::ostream&)> report;

    if (a.sampler == "lhs") {
        if (a.s || !a.oa_path.empty()) throw UsageError("--s and --oa apply to --sampler tang only");
        std::uint32_t n = 0;
        if (a.n && a.p) throw UsageError("give either --n or --p, not both");
        if (a.n) {
            n = *a.n;
        } else if (a.p) {
            n = OsParameters(*a.p, *a.d).n();
            p_out = *a.p;
        } else {
            throw UsageError("--sampler lhs needs --n (or --p)");
        }
        if (n == 0 || *a.d == 0) throw UsageError("--n and --d must be positive");
        const std::uint32_t d = *a.d;
        make = [=](std::uint64_t seed) { return generate_lhs(n, d, TrialStreams{seed, 0, 0}); };
        report = [p_out](const SampleMatrix& m, std::ostream& os) {
            os << "latin: " << verdict(is_latin(m)) << '\n';
            if (p_out) os << "orthogonal: " << verdict(is_orthogonal_sample(m, OsParameters(*p_out, m.d()))) << '\n';
        };
    } else if (a.sampler == "os") {
        if (a.s || !a.oa_path.empty()) throw UsageError("--s and --oa apply to --sampler tang only");
        if (*a.d < 2) throw UsageError("--sampler os requires d >= 2 (got d=" + std::to_string(*a.d) + ")");
        if (a.n && a.p) throw UsageError("give either --n or --p, not both");
        if (!a.n && !a.p) throw UsageError("--sampler os needs --p (or --n = p^d)");
        const OsParameters params = [&] {
            try {
                return a.p ? OsParameters(*a.p, *a.d) : OsParameters::from_levels(*a.n, *a.d);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
        }();
        p_out = params.p();
        make = [=](std::uint64_t seed) { return generate_os(params, TrialStreams{seed, 0, 0}); };
        report = [params](const SampleMatrix& m, std::ostream& os) {
            os << "latin: " << verdict(is_latin(m)) << '\n';
            os << "orthogonal: " << verdict(is_orthogonal_sample(m, params)) << '\n';
        };
    } else {
        if (a.n || a.p) throw UsageError("--sampler tang takes --s and --d (or --oa), not --n/--p");
        std::optional<OrthogonalArray> base;
        if (!a.oa_path.empty()) {
            if (a.s) throw UsageError("give either --s or --oa, not both");
            const std::string meta = a.oa_meta.empty() ? a.oa_path + ".json" : a.oa_meta;
            std::ifstream csv(a.oa_path), side(meta);
            if (!csv) throw io::FormatError("cannot open " + a.oa_path);
            if (!side) throw io::FormatError("cannot open " + meta);
            base = io::read_oa(csv, side);
        } else {
            if (!a.s) throw UsageError("--sampler tang needs --s (prime) and --d, or --oa");
            try {
                base = build_oa_strength2(*a.s, *a.d);
            } catch (const UnsupportedParameters& e) {
                throw UsageError(e.what());
            }
        }
        const std::uint32_t block = base->runs() / base->symbols();
        make = [oa = *base](std::uint64_t seed) {
            CounterStream relabel(seed, 0, 1, 0);
            return tang_expand(randomize_oa(oa, relabel), TrialStreams{seed, 0, 0});
        };
        report = [block, strength = base->strength()](const SampleMatrix& m, std::ostream& os) {
            os << "latin: " << verdict(is_latin(m)) << '\n';
            if (strength >= 2) os << "pairwise-blocks: " << verdict(pairwise_block_uniform(m, block)) << '\n';
        };
    }

    const std::uint64_t seed = resolve_seed(a.seed, a.out.empty() ? err : out);
    save_config(app, a.save_config);
    const SampleMatrix sample = make(seed);
    const std::string body = render([&](std::ostream& os) {
        if (a.format == "json") {
            io::write_sample_json(os, sample, p_out);
        } else {
            io::write_sample_csv(os, sample);
        }
    });
    if (a.out.empty()) {
        out << body;
        report(sample, err);
    } else {
        io::write_file_atomic(a.out, body);
        report(sample, out);
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// campaign

struct CampaignArgs {
    std::vector<std::uint32_t> n_list;
    std::uint32_t d = 0, t = 0;
    std::vector<double> thresholds{0.25, 0.5, 0.75, 1.0};
    std::uint32_t replicates = 200;
    std::uint32_t max_trials = 0;
    std::string sampler = "lhs";
    SeedArgs seed;
    unsigned workers = 1;
    std::string out, save_config;
};

int cmd_campaign(const CLI::App& app, CampaignArgs& a, std::ostream& out, std::ostream&) {
    if (a.n_list.empty()) throw UsageError("campaign needs --n-list");
    if (a.t == 0 || a.t > a.d) throw UsageError("campaign needs 1 <= t <= d");
    if (a.replicates == 0) throw UsageError("--replicates must be positive");
    for (std::size_t i = 0; i < a.thresholds.size(); ++i) {
        if (!(a.thresholds[i] > 0 && a.thresholds[i] <= 1)) throw UsageError("thresholds must lie in (0, 1]");
        if (i && !(a.thresholds[i] > a.thresholds[i - 1])) throw UsageError("thresholds must be ascending");
    }
    const SamplerKind kind = parse_sampler(a.sampler);
    for (auto n : a.n_list) {
        if (n == 0) throw UsageError("n values must be positive");
        try {
            TrialSampler(kind, n, a.d);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }
    const std::uint64_t seed = resolve_seed(a.seed, out);
    save_config(app, a.save_config);
    ensure_directory(a.out);

    std::vector<CoverageCampaignResult> results;
    for (auto n : a.n_list) {
        CampaignConfig c;
        c.n = n;
        c.d = a.d;
        c.t = a.t;
        c.thresholds = a.thresholds;
        c.replicates = a.replicates;
        c.max_trials = a.max_trials ? a.max_trials : default_max_trials(n, a.d, a.t);
        c.sampler = kind;
        c.master_seed = seed;
        c.workers = a.workers;
        results.push_back(run_campaign(c));
        const auto& r = results.back();
        io::write_file_atomic(fs::path(a.out) / ("campaign_n" + std::to_string(n) + ".csv"),
                              render([&](std::ostream& os) { io::write_campaign_csv(os, r); }));
        out << "n=" << n;
        for (const auto& o : r.outcomes) {
            out << "  " << io::format_double(o.threshold) << ": " << io::format_double(o.mean_trials);
            if (o.censored) out << " (" << o.censored << " censored)";
        }
        out << '\n';
    }

    std::vector<std::pair<double, std::optional<double>>> gradients;
    std::string grad_csv = "threshold,slope\n";
    for (double th : a.thresholds) {
        std::optional<double> slope;
        try {
            slope = fit_loglog_gradient(results, th);
        } catch (const InsufficientData&) {
        }
        gradients.emplace_back(th, slope);
        grad_csv += io::format_double(th) + "," + (slope ? io::format_double(*slope) : std::string("nan")) + "\n";
        out << "gradient@" << io::format_double(th) << ": " << (slope ? io::format_double(*slope) : "n/a") << '\n';
    }
    io::write_file_atomic(fs::path(a.out) / "gradients.csv", grad_csv);
    io::write_file_atomic(fs::path(a.out) / "summary.json", io::campaign_summary_json(results, gradients));

    for (const auto& r : results) {
        if (r.any_fully_censored()) {
            out << "warning: some thresholds were censored in every replicate at n=" << r.config.n << '\n';
            return kCensored;
        }
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// curve

struct CurveArgs {
    std::uint32_t n = 0, d = 0, t = 0;
    std::int64_t k_max = 0;
    std::uint32_t replicates = 200;
    std::string sampler = "lhs";
    SeedArgs seed;
    unsigned workers = 1;
    std::string out, save_config;
};

int cmd_curve(const CLI::App& app, CurveArgs& a, std::ostream& out, std::ostream&) {
    if (a.k_max < 1) throw UsageError("--k-max must be at least 1");
    if (a.k_max > std::numeric_limits<std::uint32_t>::max()) throw UsageError("--k-max too large");
    if (a.t == 0 || a.t > a.d) throw UsageError("curve needs 1 <= t <= d");
    if (a.n == 0 || a.replicates == 0) throw UsageError("--n and --replicates must be positive");
    const SamplerKind kind = parse_sampler(a.sampler);
    try {
        TrialSampler(kind, a.n, a.d);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const std::uint64_t seed = resolve_seed(a.seed, out);
    save_config(app, a.save_config);
    CurveConfig c{a.n, a.d, a.t, a.replicates, kind, seed, a.workers};
    const auto curve = coverage_curve(c, static_cast<std::uint32_t>(a.k_max));
    io::write_file_atomic(a.out, render([&](std::ostream& os) { io::write_curve_csv(os, curve); }));
    const auto& last = curve.back();
    out << "k=" << last.k << " empirical=" << io::format_double(last.empirical)
        << " conjectured=" << io::format_double(last.conjectured) << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// subblocks

struct SubblockArgs {
    std::uint32_t p = 0, d = 0;
    std::string sampler = "lhs";
    double target = 0.25;
    std::uint32_t replicates = 200;
    std::uint32_t max_trials = 0;
    SeedArgs seed;
    unsigned workers = 1;
    std::string out, save_config;
};

int cmd_subblocks(const CLI::App& app, SubblockArgs& a, std::ostream& out, std::ostream& err) {
    const OsParameters params = [&] {
        try {
            return OsParameters(a.p, a.d);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }();
    if (!(a.target > 0 && a.target <= 1)) throw UsageError("--coverage-target must lie in (0, 1]");
    if (a.replicates == 0) throw UsageError("--replicates must be positive");
    const SamplerKind kind = parse_sampler(a.sampler);
    const std::uint64_t seed = resolve_seed(a.seed, out);
    save_config(app, a.save_config);

    const TrialSampler sampler(kind, params.n(), params.d());
    const std::uint32_t cap = a.max_trials ? a.max_trials : default_max_trials(params.n(), params.d(), 2);
    const std::uint64_t key = experiment_key(seed, params.n(), params.d(), 2, kind);
    const auto pairs = all_subspaces(params.d(), 2);

    std::vector<std::optional<std::vector<SampleMatrix>>> runs(a.replicates);
    parallel_for(a.replicates, a.workers, [&](std::size_t r) {
        runs[r] = sample_until_coverage(sampler, 2, a.target, cap, key, static_cast<std::uint32_t>(r));
    });
    std::vector<SampleMatrix> all;
    std::vector<std::size_t> positive(pairs.size(), 0);
    std::uint64_t trials = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        if (!runs[r]) {
            err << "coverage target " << io::format_double(a.target) << " not reached within " << cap
                << " trials (replicate " << r << ")\n";
            return kUsageError;
        }
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (spread(subblock_histogram(*runs[r], params, pairs[i][0], pairs[i][1])).variance > 0) ++positive[i];
        }
        trials += runs[r]->size();
        all.insert(all.end(), runs[r]->begin(), runs[r]->end());
    }

    ensure_directory(a.out);
    std::string summary = "pair,trials,min,max,variance,replicates,positive_variance_replicates\n";
    out << "mean trials to target: " << io::format_double(static_cast<double>(trials) / a.replicates) << '\n';
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto h = subblock_histogram(all, params, pairs[i][0], pairs[i][1]);
        const auto s = spread(h);
        const std::string name = "x" + std::to_string(pairs[i][0] + 1) + "_x" + std::to_string(pairs[i][1] + 1);
        io::write_file_atomic(fs::path(a.out) / ("subblocks_" + name + ".csv"),
                              render([&](std::ostream& os) { io::write_subblock_csv(os, h); }));
        summary += name + "," + std::to_string(h.trials) + "," + io::format_double(s.min) + "," +
                   io::format_double(s.max) + "," + io::format_double(s.variance) + "," +
                   std::to_string(a.replicates) + "," + std::to_string(positive[i]) + "\n";
        out << name << ": min=" << io::format_double(s.min) << " max=" << io::format_double(s.max)
            << " variance=" << io::format_double(s.variance) << " positive-variance replicates=" << positive[i]
            << "/" << a.replicates << '\n';
    }
    io::write_file_atomic(fs::path(a.out) / "summary.csv", summary);
    return kOk;
}

// ---------------------------------------------------------------------------
// plotdata

struct PlotArgs {
    std::vector<std::string> inputs;
    std::string out;
};

int cmd_plotdata(PlotArgs& a, std::ostream& out) {
    std::vector<fs::path> files;
    for (const auto& in : a.inputs) {
        if (fs::is_directory(in)) {
            std::vector<fs::path> found;
            for (const auto& e : fs::directory_iterator(in)) {
                const auto name = e.path().filename().string();
                if (name.starts_with("campaign_") && e.path().extension() == ".csv") found.push_back(e.path());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.emplace_back(in);
        }
    }
    if (files.empty()) throw UsageError("plotdata found no campaign CSV files");

    struct Key {
        std::string sampler;
        std::uint32_t d, t;
        double threshold;
        std::uint32_t n;
        auto operator<=>(const Key&) const = default;
    };
    struct Acc {
        double sum = 0;
        std::uint32_t used = 0, censored = 0;
    };
    std::map<Key, Acc> table;
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw io::FormatError("cannot open " + f.string());
        for (const auto& row : io::read_campaign_csv(in)) {
            auto& acc = table[Key{row.sampler, row.d, row.t, row.threshold, row.n}];
            if (row.trials) {
                acc.sum += *row.trials;
                ++acc.used;
            } else {
                ++acc.censored;
            }
        }
    }
    std::string csv = "sampler,d,t,threshold,n,mean_trials,log10_n,log10_mean_trials,replicates,censored\n";
    for (const auto& [k, acc] : table) {
        const double mean = acc.used ? acc.sum / acc.used : std::nan("");
        csv += k.sampler + "," + std::to_string(k.d) + "," + std::to_string(k.t) + "," + io::format_double(k.threshold) +
               "," + std::to_string(k.n) + "," + io::format_double(mean) + "," +
               io::format_double(std::log10(static_cast<double>(k.n))) + "," + io::format_double(std::log10(mean)) +
               "," + std::to_string(acc.used + acc.censored) + "," + std::to_string(acc.censored) + "\n";
    }
    io::write_file_atomic(a.out, csv);
    out << "wrote " << table.size() << " rows to " << a.out << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// oa

struct OaArgs {
    std::uint32_t s = 0, d = 0;
    bool randomize = false;
    SeedArgs seed;
    std::string out, meta;
};

int cmd_oa(OaArgs& a, std::ostream& out) {
    OrthogonalArray oa = [&] {
        try {
            return build_oa_strength2(a.s, a.d);
        } catch (const UnsupportedParameters& e) {
            throw UsageError(e.what());
        }
    }();
    if (a.randomize) {
        CounterStream gen(resolve_seed(a.seed, out), 0, 1, 0);
        oa = randomize_oa(oa, gen);
    }
    io::write_file_atomic(a.out, render([&](std::ostream& os) { io::write_oa_csv(os, oa); }));
    io::write_file_atomic(a.meta.empty() ? a.out + ".json" : a.meta,
                          render([&](std::ostream& os) { io::write_oa_sidecar(os, oa); }));
    out << "OA(" << oa.runs() << ", " << oa.factors() << ", " << oa.symbols() << ", " << oa.strength()
        << ") strength verified: " << verdict(verify_strength(oa, oa.strength())) << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
    std::string in, format;
    std::optional<std::uint32_t> p;
};

int cmd_validate(ValidateArgs& a, std::ostream& out) {
    std::ifstream in(a.in);
    if (!in) throw io::FormatError("cannot open " + a.in);
    const std::string format = !a.format.empty() ? a.format : (fs::path(a.in).extension() == ".json" ? "json" : "csv");
    std::optional<SampleMatrix> sample;
    std::optional<std::uint32_t> p = a.p;
    if (format == "json") {
        auto doc = io::read_sample_json(in);
        sample = std::move(doc.sample);
        if (!p) p = doc.p;
    } else {
        sample = io::read_sample_csv(in);
    }
    out << "n: " << sample->n() << "\nd: " << sample->d() << '\n';
    out << "latin: " << verdict(is_latin(*sample)) << '\n';
    if (p) out << "orthogonal: " << verdict(is_orthogonal_sample(*sample, OsParameters(*p, static_cast<std::uint32_t>(sample->d())))) << '\n';
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Latin Hypercube / Orthogonal sampling and subspace coverage experiments", "hypercoverage"};
    app.set_config("--config", "", "key=value file mirroring the flags; flags on the command line win");
    app.require_subcommand(1);

    const auto positive = CLI::PositiveNumber;
    const auto sampler_names = CLI::IsMember({"lhs", "os"});

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "generate one trial and report its validation verdicts");
    g->add_option("--sampler", gen.sampler, "lhs, os or tang")->check(CLI::IsMember({"lhs", "os", "tang"}));
    g->add_option("--n", gen.n, "levels per axis");
    g->add_option("--p", gen.p, "blocks per axis (n = p^d)");
    g->add_option("--d", gen.d, "dimensions");
    g->add_option("--s", gen.s, "symbols of the strength-2 array for tang (prime)");
    g->add_option("--oa", gen.oa_path, "orthogonal array CSV to expand (tang)");
    g->add_option("--oa-meta", gen.oa_meta, "sidecar JSON for --oa (default: <oa>.json)");
    add_seed(g, gen.seed);
    g->add_option("--out", gen.out, "output file (default: standard output)");
    g->add_option("--format", gen.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    g->add_option("--save-config", gen.save_config, "write the effective flags as a config file")->configurable(false);

    CampaignArgs camp;
    auto* c = app.add_subcommand("campaign", "trials-to-coverage campaign over a list of n");
    c->add_option("--n-list", camp.n_list, "comma-separated levels per axis")->delimiter(',')->required();
    c->add_option("--d", camp.d, "dimensions")->required()->check(positive);
    c->add_option("--t", camp.t, "subspace dimension")->required()->check(positive);
    c->add_option("--thresholds", camp.thresholds, "ascending coverage fractions in (0,1]")->delimiter(',');
    c->add_option("--replicates", camp.replicates, "replicates per n");
    c->add_option("--max-trials", camp.max_trials, "per-replicate trial cap (0: automatic)");
    c->add_option("--sampler", camp.sampler, "lhs or os")->check(sampler_names);
    add_seed(c, camp.seed);
    c->add_option("--workers", camp.workers, "worker threads (0: all cores)");
    c->add_option("--out", camp.out, "output directory")->required();
    c->add_option("--save-config", camp.save_config, "write the effective flags as a config file")->configurable(false);

    CurveArgs curve;
    auto* cu = app.add_subcommand("curve", "mean coverage after k trials against the closed forms");
    cu->add_option("--n", curve.n, "levels per axis")->required();
    cu->add_option("--d", curve.d, "dimensions")->required();
    cu->add_option("--t", curve.t, "subspace dimension")->required();
    cu->add_option("--k-max", curve.k_max, "largest trial count")->required();
    cu->add_option("--replicates", curve.replicates, "replicates");
    cu->add_option("--sampler", curve.sampler, "lhs or os")->check(sampler_names);
    add_seed(cu, curve.seed);
    cu->add_option("--workers", curve.workers, "worker threads (0: all cores)");
    cu->add_option("--out", curve.out, "output CSV")->required();
    cu->add_option("--save-config", curve.save_config, "write the effective flags as a config file")->configurable(false);

    SubblockArgs sub;
    auto* sb = app.add_subcommand("subblocks", "2D sub-block occupancy at a coverage target");
    sb->add_option("--p", sub.p, "blocks per axis")->required();
    sb->add_option("--d", sub.d, "dimensions")->required();
    sb->add_option("--sampler", sub.sampler, "lhs or os")->check(sampler_names);
    sb->add_option("--coverage-target", sub.target, "mean 2D coverage to reach before counting");
    sb->add_option("--replicates", sub.replicates, "replicates");
    sb->add_option("--max-trials", sub.max_trials, "per-replicate trial cap (0: automatic)");
    add_seed(sb, sub.seed);
    sb->add_option("--workers", sub.workers, "worker threads (0: all cores)");
    sb->add_option("--out", sub.out, "output directory")->required();
    sb->add_option("--save-config", sub.save_config, "write the effective flags as a config file")->configurable(false);

    PlotArgs plot;
    auto* pd = app.add_subcommand("plotdata", "reshape campaign CSVs into log10/log10 columns");
    pd->add_option("--in", plot.inputs, "campaign CSV files or directories")->required()->delimiter(',');
    pd->add_option("--out", plot.out, "output CSV")->required();

    OaArgs oa;
    auto* o = app.add_subcommand("oa", "export a strength-2 orthogonal array");
    o->add_option("--s", oa.s, "symbols (prime)")->required();
    o->add_option("--d", oa.d, "factors, 2 <= d <= s+1")->required();
    o->add_flag("--randomize", oa.randomize, "permute rows, columns and symbols");
    add_seed(o, oa.seed);
    o->add_option("--out", oa.out, "array CSV")->required();
    o->add_option("--meta", oa.meta, "sidecar JSON (default: <out>.json)");

    ValidateArgs val;
    auto* v = app.add_subcommand("validate", "check a sample file");
    v->add_option("--in", val.in, "sample file")->required();
    v->add_option("--format", val.format, "csv or json (default: by extension)")->check(CLI::IsMember({"csv", "json"}));
    v->add_option("--p", val.p, "blocks per axis for the orthogonal check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (g->parsed()) return cmd_generate(app, gen, out, err);
        if (c->parsed()) return cmd_campaign(app, camp, out, err);
        if (cu->parsed()) return cmd_curve(app, curve, out, err);
        if (sb->parsed()) return cmd_subblocks(app, sub, out, err);
        if (pd->parsed()) return cmd_plotdata(plot, out);
        if (o->parsed()) return cmd_oa(oa, out);
        if (v->parsed()) return cmd_validate(val, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const io::FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::logic_error& e) {
        // DomainError, UnsupportedParameters, InvalidInput
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace hypercoverage::cli
