#include "hypercoverage/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "hypercoverage/errors.hpp"

namespace hypercoverage::io {

using nlohmann::json;

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

template <class T>
T parse_int(std::string_view field, std::string_view what) {
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw FormatError("malformed " + std::string(what) + " '" + std::string(field) + "'");
    }
    return value;
}

double parse_double(std::string_view field, std::string_view what) {
    double value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw FormatError("malformed " + std::string(what) + " '" + std::string(field) + "'");
    }
    return value;
}

json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

SampleMatrix from_one_based(std::size_t rows, std::size_t cols, const std::vector<std::uint64_t>& values) {
    std::vector<Level> levels;
    levels.reserve(values.size());
    for (auto v : values) {
        if (v < 1 || v > rows) {
            throw FormatError("level " + std::to_string(v) + " outside 1.." + std::to_string(rows));
        }
        levels.push_back(static_cast<Level>(v - 1));
    }
    return SampleMatrix(rows, cols, std::move(levels));
}

}  // namespace

void write_sample_csv(std::ostream& out, const SampleMatrix& sample) {
    for (std::size_t j = 0; j < sample.d(); ++j) out << (j ? ",x" : "x") << j + 1;
    out << '\n';
    for (std::size_t i = 0; i < sample.n(); ++i) {
        for (std::size_t j = 0; j < sample.d(); ++j) {
            out << (j ? "," : "") << std::uint64_t{sample.at(i, j)} + 1;
        }
        out << '\n';
    }
}

SampleMatrix read_sample_csv(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw FormatError("sample CSV is empty");
    const auto header = split(line, ',');
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] != "x" + std::to_string(j + 1)) {
            throw FormatError("sample CSV header must be x1,...,xd; got '" + line + "'");
        }
    }
    const std::size_t d = header.size();
    std::vector<std::uint64_t> values;
    std::size_t rows = 0;
    while (next_line(in, line)) {
        const auto fields = split(line, ',');
        if (fields.size() != d) {
            throw FormatError("sample CSV row " + std::to_string(rows + 1) + " has " +
                              std::to_string(fields.size()) + " fields, expected " + std::to_string(d));
        }
        for (auto f : fields) values.push_back(parse_int<std::uint64_t>(f, "level"));
        ++rows;
    }
    if (rows == 0) throw FormatError("sample CSV has no rows");
    return from_one_based(rows, d, values);
}

void write_sample_json(std::ostream& out, const SampleMatrix& sample, std::optional<std::uint32_t> p) {
    json doc;
    doc["n"] = sample.n();
    doc["d"] = sample.d();
    doc["p"] = p ? json(*p) : json(nullptr);
    json levels = json::array();
    for (std::size_t i = 0; i < sample.n(); ++i) {
        json row = json::array();
        for (auto v : sample.row(i)) row.push_back(std::uint64_t{v} + 1);
        levels.push_back(std::move(row));
    }
    doc["levels"] = std::move(levels);
    out << doc.dump() << '\n';
}

SampleDocument read_sample_json(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
        const auto n = doc.at("n").get<std::size_t>();
        const auto d = doc.at("d").get<std::size_t>();
        std::optional<std::uint32_t> p;
        if (!doc.at("p").is_null()) p = doc.at("p").get<std::uint32_t>();
        const auto& levels = doc.at("levels");
        if (levels.size() != n) throw FormatError("sample JSON declares n=" + std::to_string(n) + " but has " +
                                                  std::to_string(levels.size()) + " rows");
        std::vector<std::uint64_t> values;
        for (const auto& row : levels) {
            if (row.size() != d) throw FormatError("sample JSON row width differs from d");
            for (const auto& v : row) values.push_back(v.get<std::uint64_t>());
        }
        return {from_one_based(n, d, values), p};
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed sample JSON: ") + e.what());
    }
}

void write_oa_csv(std::ostream& out, const OrthogonalArray& oa) {
    for (std::uint32_t i = 0; i < oa.runs(); ++i) {
        for (std::uint32_t j = 0; j < oa.factors(); ++j) out << (j ? "," : "") << oa.at(i, j);
        out << '\n';
    }
}

void write_oa_sidecar(std::ostream& out, const OrthogonalArray& oa) {
    json doc{{"s", oa.symbols()}, {"t", oa.strength()}, {"lambda", oa.index()}};
    out << doc.dump() << '\n';
}

OrthogonalArray read_oa(std::istream& csv, std::istream& sidecar) {
    std::uint32_t s = 0, t = 0, lambda = 0;
    try {
        const json meta = json::parse(sidecar);
        s = meta.at("s").get<std::uint32_t>();
        t = meta.at("t").get<std::uint32_t>();
        lambda = meta.at("lambda").get<std::uint32_t>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed array sidecar: ") + e.what());
    }
    std::string line;
    std::vector<std::uint32_t> entries;
    std::size_t d = 0;
    std::uint32_t rows = 0;
    while (next_line(csv, line)) {
        const auto fields = split(line, ',');
        if (rows == 0) d = fields.size();
        if (fields.size() != d) throw FormatError("array CSV rows have differing widths");
        for (auto f : fields) entries.push_back(parse_int<std::uint32_t>(f, "symbol"));
        ++rows;
    }
    if (rows == 0) throw FormatError("array CSV has no rows");
    OrthogonalArray oa(rows, static_cast<std::uint32_t>(d), s, t, lambda, std::move(entries));
    if (!verify_strength(oa, t)) {
        throw InvalidInput("imported array does not have strength " + std::to_string(t));
    }
    return oa;
}

void write_campaign_csv(std::ostream& out, const CoverageCampaignResult& result) {
    const auto& c = result.config;
    out << "n,d,t,sampler,threshold,replicate,trials,censored\n";
    for (const auto& o : result.outcomes) {
        for (std::size_t r = 0; r < o.trials.size(); ++r) {
            out << c.n << ',' << c.d << ',' << c.t << ',' << to_string(c.sampler) << ','
                << format_double(o.threshold) << ',' << r << ',';
            if (o.trials[r]) {
                out << format_double(*o.trials[r]) << ",0\n";
            } else {
                out << ",1\n";
            }
        }
    }
}

std::string campaign_summary_json(const std::vector<CoverageCampaignResult>& results,
                                  const std::vector<std::pair<double, std::optional<double>>>& gradients) {
    json runs = json::array();
    for (const auto& r : results) {
        const auto& c = r.config;
        json config{{"n", c.n},
                    {"d", c.d},
                    {"t", c.t},
                    {"sampler", std::string(to_string(c.sampler))},
                    {"thresholds", c.thresholds},
                    {"replicates", c.replicates},
                    {"max_trials", c.max_trials},
                    {"master_seed", c.master_seed}};
        json mean = json::array(), se = json::array(), censored = json::array(), per_subspace = json::array();
        for (const auto& o : r.outcomes) {
            mean.push_back(nullable(o.mean_trials));
            se.push_back(nullable(o.stderr_trials));
            censored.push_back(o.censored);
            // per-subspace mean first-passage trials over replicates that reached it
            json row = json::array();
            for (std::size_t i = 0; i < r.subspaces.size(); ++i) {
                double sum = 0;
                std::size_t used = 0;
                for (const auto& per : o.subspace_trials) {
                    if (per[i]) {
                        sum += *per[i];
                        ++used;
                    }
                }
                row.push_back(used ? json(sum / static_cast<double>(used)) : json(nullptr));
            }
            per_subspace.push_back(std::move(row));
        }
        runs.push_back({{"config", config},
                        {"subspaces", r.subspaces},
                        {"mean_trials", mean},
                        {"stderr", se},
                        {"censored", censored},
                        {"subspace_mean_trials", per_subspace}});
    }
    json grad = json::array();
    for (const auto& [threshold, slope] : gradients) {
        grad.push_back({{"threshold", threshold}, {"slope", slope ? json(*slope) : json(nullptr)}});
    }
    json doc{{"campaigns", runs}, {"gradients", grad}};
    return doc.dump(2) + "\n";
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
    out << "k,empirical,conjectured,asymptotic,stderr\n";
    for (const auto& pt : curve) {
        out << pt.k << ',' << format_double(pt.empirical) << ',' << format_double(pt.conjectured) << ','
            << format_double(pt.asymptotic) << ',' << format_double(pt.stderr_empirical) << '\n';
    }
}

void write_subblock_csv(std::ostream& out, const SubBlockHistogram& h) {
    out << "b1,b2,count,normalized\n";
    for (std::uint32_t b1 = 0; b1 < h.p; ++b1) {
        for (std::uint32_t b2 = 0; b2 < h.p; ++b2) {
            out << b1 + 1 << ',' << b2 + 1 << ',' << h.count(b1, b2) << ',' << format_double(h.value(b1, b2))
                << '\n';
        }
    }
}

std::vector<CampaignRow> read_campaign_csv(std::istream& in) {
    std::string line;
    if (!next_line(in, line) || line != "n,d,t,sampler,threshold,replicate,trials,censored") {
        throw FormatError("campaign CSV header must be n,d,t,sampler,threshold,replicate,trials,censored");
    }
    std::vector<CampaignRow> rows;
    while (next_line(in, line)) {
        const auto f = split(line, ',');
        if (f.size() != 8) throw FormatError("campaign CSV row has " + std::to_string(f.size()) + " fields");
        CampaignRow row;
        row.n = parse_int<std::uint32_t>(f[0], "n");
        row.d = parse_int<std::uint32_t>(f[1], "d");
        row.t = parse_int<std::uint32_t>(f[2], "t");
        row.sampler = std::string(f[3]);
        row.threshold = parse_double(f[4], "threshold");
        row.replicate = parse_int<std::uint32_t>(f[5], "replicate");
        const bool censored = parse_int<int>(f[7], "censored") != 0;
        if (!censored) row.trials = parse_double(f[6], "trials");
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw FormatError("write to " + tmp.string() + " failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace hypercoverage::io
