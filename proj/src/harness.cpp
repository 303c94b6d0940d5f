#include "genesis/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace genesis {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream is(s);
    while (std::getline(is, token, sep)) parts.push_back(token);
    return parts;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid " + what + ": '" + s + "'");
    }
}

long long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid " + what + ": '" + s + "'");
    }
}

}  // namespace

std::string format_double(double v) {
    // shortest representation that parses back to the same double
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string Scenario::name() const {
    return std::to_string(n_sfcrs) + "_" + std::to_string(traffic_scale) + "_" +
           to_string(variant) + "_" + format_double(link_bandwidth) + "_" +
           format_double(host_cpu);
}

Scenario Scenario::parse(const std::string& name) {
    const std::vector<std::string> parts = split(name, '_');
    if (parts.size() != 5) throw std::invalid_argument("bad scenario name '" + name + "'");
    Scenario s;
    s.n_sfcrs = static_cast<int>(parse_int(parts[0], "sfcr count"));
    s.traffic_scale = static_cast<int>(parse_int(parts[1], "traffic scale"));
    if (parts[2] == "A")
        s.variant = TrafficVariant::A;
    else if (parts[2] == "B")
        s.variant = TrafficVariant::B;
    else
        throw std::invalid_argument("bad traffic variant '" + parts[2] + "'");
    s.link_bandwidth = parse_double(parts[3], "bandwidth");
    s.host_cpu = parse_double(parts[4], "cpu");
    if (s.n_sfcrs < 1 || s.traffic_scale < 1 || s.link_bandwidth <= 0 || s.host_cpu <= 0)
        throw std::invalid_argument("bad scenario name '" + name + "'");
    return s;
}

std::vector<Scenario> scenario_grid() {
    std::vector<Scenario> grid;
    for (int n : {32, 48})
        for (int scale : {1, 2})
            for (TrafficVariant variant : {TrafficVariant::A, TrafficVariant::B})
                for (double bw : {5.0, 10.0})
                    for (double cpu : {0.5, 1.0, 2.0})
                        grid.push_back({n, scale, variant, bw, cpu});
    return grid;
}

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Genesis: return "genesis";
        case Algorithm::Bega100: return "bega100";
        case Algorithm::Bega2000: return "bega2000";
        case Algorithm::Gda: return "gda";
    }
    throw std::logic_error("bad algorithm");
}

std::optional<Algorithm> algorithm_from_string(const std::string& name) {
    if (name == "genesis") return Algorithm::Genesis;
    if (name == "bega100") return Algorithm::Bega100;
    if (name == "bega2000") return Algorithm::Bega2000;
    if (name == "gda") return Algorithm::Gda;
    return std::nullopt;
}

IniFile IniFile::parse(std::istream& is) {
    IniFile ini;
    std::string line;
    std::string section;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            if (!ini.sections_.count(section)) {
                ini.sections_[section];
                ini.section_order_.push_back(section);
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad config line: '" + line + "'");
        ini.set(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return ini;
}

IniFile IniFile::load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open config file " + path.string());
    return parse(is);
}

std::optional<std::string> IniFile::get(const std::string& section,
                                        const std::string& key) const {
    auto sit = sections_.find(section);
    if (sit == sections_.end()) return std::nullopt;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return std::nullopt;
    return kit->second;
}

void IniFile::set(const std::string& section, const std::string& key, const std::string& value) {
    if (!sections_.count(section)) section_order_.push_back(section);
    sections_[section][key] = value;
}

void IniFile::write(std::ostream& os) const {
    for (const std::string& section : section_order_) {
        os << '[' << section << "]\n";
        for (const auto& [key, value] : sections_.at(section)) os << key << " = " << value << '\n';
        os << '\n';
    }
}

Config Config::defaults() {
    Config cfg;
    cfg.templates = catalog_sfcrs();
    return cfg;
}

namespace {

std::string templates_to_string(const std::vector<SfcRequest>& templates) {
    std::string out;
    for (std::size_t i = 0; i < templates.size(); ++i) {
        if (i) out += ';';
        for (std::size_t j = 0; j < templates[i].vnfs.size(); ++j) {
            if (j) out += '>';
            out += to_string(templates[i].vnfs[j]);
        }
    }
    return out;
}

std::vector<SfcRequest> templates_from_string(const std::string& s) {
    std::vector<SfcRequest> out;
    for (const std::string& chain : split(s, ';')) {
        SfcRequest r;
        r.id = static_cast<int>(out.size());
        r.arrival_rank = r.id;
        for (const std::string& name : split(chain, '>')) {
            const auto v = vnf_from_string(trim(name));
            if (!v) throw std::invalid_argument("unknown vnf '" + name + "' in templates");
            r.vnfs.push_back(*v);
        }
        if (r.vnfs.empty()) throw std::invalid_argument("empty chain in templates");
        r.strict_order = r.vnfs;
        out.push_back(std::move(r));
    }
    if (out.empty()) throw std::invalid_argument("no templates configured");
    return out;
}

}  // namespace

void Config::apply(const IniFile& ini) {
    auto num = [&](const char* sec, const char* key, double& slot) {
        if (auto v = ini.get(sec, key)) slot = parse_double(*v, key);
    };
    auto integer = [&](const char* sec, const char* key, int& slot) {
        if (auto v = ini.get(sec, key)) slot = static_cast<int>(parse_int(*v, key));
    };
    integer("topology", "k", k);
    num("topology", "propagation_delay_ms", propagation_delay_ms);
    num("topology", "host_memory_gb", host_memory_gb);
    num("workload", "cpu_per_req_lb", catalog.cpu_per_request[0]);
    num("workload", "cpu_per_req_waf", catalog.cpu_per_request[1]);
    num("workload", "cpu_per_req_ha", catalog.cpu_per_request[2]);
    num("workload", "cpu_per_req_tm", catalog.cpu_per_request[3]);
    num("workload", "traffic_base", traffic_base);
    num("workload", "traffic_amplitude", traffic_amplitude);
    if (auto v = ini.get("workload", "templates")) templates = templates_from_string(*v);
    num("solvers", "placement_sigma", placement_sigma);
    integer("solvers", "anchor_host", anchor_host);
    num("netsim", "base_proc_ms", sim.base_proc_ms);
    num("netsim", "flow_mb_per_request", sim.flow_mb_per_request);
    num("netsim", "congestion_penalty_ms", sim.congestion_penalty_ms);
    integer("evolution", "population_size", evolution.population_size);
    integer("evolution", "max_generations", evolution.max_generations);
    num("evolution", "min_acceptance_ratio", evolution.min_acceptance_ratio);
    num("evolution", "max_avg_latency_ms", evolution.max_avg_latency_ms);
    num("evolution", "blx_alpha", evolution.blx_alpha);
    num("evolution", "mutation_sigma", evolution.mutation_sigma);
}

void Config::write(IniFile& ini) const {
    ini.set("topology", "k", std::to_string(k));
    ini.set("topology", "propagation_delay_ms", format_double(propagation_delay_ms));
    ini.set("topology", "host_memory_gb", format_double(host_memory_gb));
    ini.set("workload", "cpu_per_req_lb", format_double(catalog.cpu_per_request[0]));
    ini.set("workload", "cpu_per_req_waf", format_double(catalog.cpu_per_request[1]));
    ini.set("workload", "cpu_per_req_ha", format_double(catalog.cpu_per_request[2]));
    ini.set("workload", "cpu_per_req_tm", format_double(catalog.cpu_per_request[3]));
    ini.set("workload", "traffic_base", format_double(traffic_base));
    ini.set("workload", "traffic_amplitude", format_double(traffic_amplitude));
    ini.set("workload", "templates", templates_to_string(templates));
    ini.set("solvers", "placement_sigma", format_double(placement_sigma));
    ini.set("solvers", "anchor_host", std::to_string(anchor_host));
    ini.set("netsim", "base_proc_ms", format_double(sim.base_proc_ms));
    ini.set("netsim", "flow_mb_per_request", format_double(sim.flow_mb_per_request));
    ini.set("netsim", "congestion_penalty_ms", format_double(sim.congestion_penalty_ms));
    ini.set("evolution", "population_size", std::to_string(evolution.population_size));
    ini.set("evolution", "max_generations", std::to_string(evolution.max_generations));
    ini.set("evolution", "min_acceptance_ratio", format_double(evolution.min_acceptance_ratio));
    ini.set("evolution", "max_avg_latency_ms", format_double(evolution.max_avg_latency_ms));
    ini.set("evolution", "blx_alpha", format_double(evolution.blx_alpha));
    ini.set("evolution", "mutation_sigma", format_double(evolution.mutation_sigma));
}

std::unique_ptr<ScenarioInstance> build_instance(const Scenario& scenario, const Config& cfg,
                                                 std::uint64_t seed) {
    if (scenario.n_sfcrs % static_cast<int>(cfg.templates.size()) != 0)
        throw std::invalid_argument("n_sfcrs must be a multiple of the template count");
    Topology topo = generate_fat_tree(cfg.k, scenario.host_cpu, scenario.link_bandwidth,
                                      cfg.host_memory_gb, cfg.propagation_delay_ms);
    const EncodingUniverse universe = EncodingUniverse::from(topo, scenario.n_sfcrs);
    auto inst = std::make_unique<ScenarioInstance>(
        std::move(topo), PredictorSet::create(universe, mix_seed(seed, 0x9D8Aull)));
    ScenarioContext& ctx = inst->context;
    ctx.topo = &inst->topology;
    ctx.requests =
        replicate(cfg.templates, scenario.n_sfcrs / static_cast<int>(cfg.templates.size()));
    ctx.pattern = traffic_pattern(scenario.variant, scenario.traffic_scale, cfg.traffic_base,
                                  cfg.traffic_amplitude);
    ctx.catalog = cfg.catalog;
    ctx.consts = cfg.sim;
    ctx.universe = universe;
    ctx.predictors = &inst->predictors;
    ctx.placement_sigma = cfg.placement_sigma;
    ctx.anchor_host = cfg.anchor_host;
    return inst;
}

void write_history_csv(const std::vector<GenerationRecord>& history, std::ostream& os) {
    os << "generation,mode,best_ar,best_latency,front1_size,evals_surrogate,evals_online\n";
    for (const GenerationRecord& rec : history)
        os << rec.generation << ',' << to_string(rec.mode) << ',' << format_double(rec.best_ar)
           << ',' << format_double(rec.best_latency) << ',' << rec.front1_size << ','
           << rec.evals_surrogate << ',' << rec.evals_online << '\n';
}

void write_record(const RunRecord& rec, std::ostream& os) {
    IniFile ini;
    ini.set("record", "scenario", rec.scenario);
    ini.set("record", "algorithm", rec.algorithm);
    ini.set("record", "seed", std::to_string(rec.seed));
    ini.set("record", "converged", rec.converged ? "true" : "false");
    ini.set("record", "generations_used", std::to_string(rec.generations_used));
    ini.set("record", "final_acceptance_ratio", format_double(rec.final_acceptance_ratio));
    ini.set("record", "final_avg_latency_ms", format_double(rec.final_avg_latency_ms));
    ini.set("record", "evals_surrogate", std::to_string(rec.evals_surrogate));
    ini.set("record", "evals_online", std::to_string(rec.evals_online));
    ini.set("record", "wall_ms", format_double(rec.wall_ms));
    ini.write(os);
}

RunRecord read_record(const std::filesystem::path& path) {
    const IniFile ini = IniFile::load(path);
    auto need = [&](const char* key) {
        auto v = ini.get("record", key);
        if (!v) throw std::invalid_argument("record " + path.string() + " missing " + key);
        return *v;
    };
    RunRecord rec;
    rec.scenario = need("scenario");
    rec.algorithm = need("algorithm");
    rec.seed = static_cast<std::uint64_t>(parse_int(need("seed"), "seed"));
    rec.converged = need("converged") == "true";
    rec.generations_used = static_cast<int>(parse_int(need("generations_used"), "generations"));
    rec.final_acceptance_ratio = parse_double(need("final_acceptance_ratio"), "ar");
    rec.final_avg_latency_ms = parse_double(need("final_avg_latency_ms"), "latency");
    rec.evals_surrogate = static_cast<std::uint64_t>(parse_int(need("evals_surrogate"), "evals"));
    rec.evals_online = static_cast<std::uint64_t>(parse_int(need("evals_online"), "evals"));
    rec.wall_ms = parse_double(need("wall_ms"), "wall");
    return rec;
}

namespace {

struct AlgorithmOutput {
    bool converged{false};
    int generations_used{0};
    EvaluationResult final_fitness;
    std::vector<GenerationRecord> history;
    std::uint64_t evals_surrogate{0};
    std::uint64_t evals_online{0};
    std::vector<EmbeddingGraph> final_egs;
};

template <typename G>
AlgorithmOutput from_outcome(EvolveOutcome<G>&& out, std::vector<EmbeddingGraph> egs) {
    AlgorithmOutput ao;
    ao.converged = out.converged;
    ao.generations_used = out.generations_used;
    ao.final_fitness = *out.best.fitness;
    ao.history = std::move(out.history);
    ao.evals_surrogate = out.evals_surrogate;
    ao.evals_online = out.evals_online;
    ao.final_egs = std::move(egs);
    return ao;
}

AlgorithmOutput execute(Algorithm algorithm, const ScenarioContext& ctx, const Config& cfg,
                        std::uint64_t seed) {
    EvolutionConfig evo = cfg.evolution;
    evo.seed = seed;
    switch (algorithm) {
        case Algorithm::Genesis: {
            EvolveOutcome<Genome> out = evolve_hybrid(evo, ctx);
            std::vector<EmbeddingGraph> egs =
                decode(out.best.genome, ctx.requests, ctx.decode_context(),
                       decode_seed(seed, out.best.genome));
            return from_outcome(std::move(out), std::move(egs));
        }
        case Algorithm::Bega100:
        case Algorithm::Bega2000: {
            evo.population_size = algorithm == Algorithm::Bega100 ? 100 : 2000;
            EvolveOutcome<BinaryGenome> out = bega_evolve(evo, ctx);
            std::vector<EmbeddingGraph> egs =
                bega_decode(out.best.genome, ctx.requests, *ctx.topo, ctx.anchor_host);
            return from_outcome(std::move(out), std::move(egs));
        }
        case Algorithm::Gda: {
            GreedyOutcome out = gda_embed(ctx);
            AlgorithmOutput ao;
            ao.converged =
                out.result.meets(evo.min_acceptance_ratio, evo.max_avg_latency_ms);
            ao.generations_used = 1;
            ao.final_fitness = out.result;
            ao.evals_online = out.evals_online;
            GenerationRecord rec;
            rec.generation = 1;
            rec.mode = EvalMode::Online;
            rec.best_ar = out.result.acceptance_ratio;
            rec.best_latency = out.result.avg_latency_ms;
            rec.front1_size = 1;
            rec.evals_surrogate = 0;
            rec.evals_online = out.evals_online;
            rec.front1 = {{out.result.acceptance_ratio, out.result.avg_latency_ms}};
            ao.history.push_back(std::move(rec));
            ao.final_egs = std::move(out.egs);
            return ao;
        }
    }
    throw std::logic_error("bad algorithm");
}

}  // namespace

RunRecord run(const Scenario& scenario, Algorithm algorithm, std::uint64_t seed,
              const Config& cfg, const std::filesystem::path& out_dir) {
    const auto instance = build_instance(scenario, cfg, seed);
    const ScenarioContext& ctx = instance->context;

    const auto t0 = std::chrono::steady_clock::now();
    AlgorithmOutput out = execute(algorithm, ctx, cfg, seed);
    const auto t1 = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.scenario = scenario.name();
    rec.algorithm = to_string(algorithm);
    rec.seed = seed;
    rec.converged = out.converged;
    rec.generations_used = out.generations_used;
    rec.final_acceptance_ratio = out.final_fitness.acceptance_ratio;
    rec.final_avg_latency_ms = out.final_fitness.avg_latency_ms;
    rec.evals_surrogate = out.evals_surrogate;
    rec.evals_online = out.evals_online;
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    const std::filesystem::path dir =
        out_dir / rec.algorithm / rec.scenario / std::to_string(seed);
    std::filesystem::create_directories(dir);

    {
        IniFile manifest;
        manifest.set("run", "scenario", rec.scenario);
        manifest.set("run", "algorithm", rec.algorithm);
        manifest.set("run", "seed", std::to_string(seed));
        cfg.write(manifest);
        manifest.set("predictors", "hvpp_seed", std::to_string(ctx.predictors->hvpp.seed));
        manifest.set("predictors", "hmhp_seed", std::to_string(ctx.predictors->hmhp.seed));
        manifest.set("predictors", "hlcp_seed", std::to_string(ctx.predictors->hlcp.seed));
        std::ofstream os(dir / "manifest.txt");
        manifest.write(os);
    }
    {
        std::ofstream os(dir / "history.csv");
        write_history_csv(out.history, os);
    }
    {
        std::ofstream os(dir / "record.txt");
        write_record(rec, os);
    }
    {
        std::ofstream os(dir / "egs.txt");
        dump_embeddings(out.final_egs, os);
    }
    {
        // Final online evaluation of the returned embedding, for inspection.
        const AcceptOutcome adm =
            accept(out.final_egs, *ctx.topo, ctx.pattern, ctx.catalog, ctx.consts);
        const EvaluationResult final_online = simulate_latency(
            out.final_egs, adm.accepted_ids, static_cast<int>(out.final_egs.size()), *ctx.topo,
            ctx.pattern, ctx.catalog, ctx.consts);
        std::ofstream os(dir / "per_sfc_latency.csv");
        write_per_sfc_csv(final_online, adm.accepted_ids, out.final_egs, os);
    }
    return rec;
}

std::vector<RunRecord> collect_records(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> paths;
    if (!std::filesystem::exists(dir))
        throw std::invalid_argument("results directory " + dir.string() + " does not exist");
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().filename() == "record.txt")
            paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    std::vector<RunRecord> records;
    records.reserve(paths.size());
    for (const auto& p : paths) records.push_back(read_record(p));
    return records;
}

std::vector<ReportRow> report(const std::vector<RunRecord>& records) {
    if (records.empty()) throw std::invalid_argument("no run records to report");
    std::map<std::string, std::vector<const RunRecord*>> by_algo;
    for (const RunRecord& rec : records) by_algo[rec.algorithm].push_back(&rec);
    std::vector<ReportRow> rows;
    for (const auto& [algo, recs] : by_algo) {
        ReportRow row;
        row.algorithm = algo;
        row.runs = static_cast<int>(recs.size());
        row.gen_min = recs.front()->generations_used;
        row.gen_max = recs.front()->generations_used;
        row.wall_min_ms = recs.front()->wall_ms;
        row.wall_max_ms = recs.front()->wall_ms;
        double gen_sum = 0.0;
        double wall_sum = 0.0;
        for (const RunRecord* rec : recs) {
            row.converged += rec->converged ? 1 : 0;
            gen_sum += rec->generations_used;
            wall_sum += rec->wall_ms;
            row.gen_min = std::min(row.gen_min, rec->generations_used);
            row.gen_max = std::max(row.gen_max, rec->generations_used);
            row.wall_min_ms = std::min(row.wall_min_ms, rec->wall_ms);
            row.wall_max_ms = std::max(row.wall_max_ms, rec->wall_ms);
        }
        row.gen_mean = gen_sum / row.runs;
        row.wall_mean_ms = wall_sum / row.runs;
        rows.push_back(row);
    }
    return rows;
}

void write_report_table(const std::vector<ReportRow>& rows, std::ostream& os) {
    os << std::left << std::setw(11) << "algorithm" << std::setw(16) << "converged"
       << std::setw(28) << "generations (mean/min/max)" << "wall ms (mean/min/max)\n";
    for (const ReportRow& row : rows) {
        char conv[64], gens[64], walls[128];
        std::snprintf(conv, sizeof(conv), "%d/%d (%.0f%%)", row.converged, row.runs,
                      100.0 * row.converged / row.runs);
        std::snprintf(gens, sizeof(gens), "%.2f/%d/%d", row.gen_mean, row.gen_min, row.gen_max);
        std::snprintf(walls, sizeof(walls), "%.1f/%.1f/%.1f", row.wall_mean_ms, row.wall_min_ms,
                      row.wall_max_ms);
        os << std::left << std::setw(11) << row.algorithm << std::setw(16) << conv
           << std::setw(28) << gens << walls << '\n';
    }
}

void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& os) {
    os << "algorithm,runs,converged,converged_pct,gen_mean,gen_min,gen_max,"
          "wall_mean_ms,wall_min_ms,wall_max_ms\n";
    for (const ReportRow& row : rows)
        os << row.algorithm << ',' << row.runs << ',' << row.converged << ','
           << format_double(100.0 * row.converged / row.runs) << ','
           << format_double(row.gen_mean) << ',' << row.gen_min << ',' << row.gen_max << ','
           << format_double(row.wall_mean_ms) << ',' << format_double(row.wall_min_ms) << ','
           << format_double(row.wall_max_ms) << '\n';
}

}  // namespace genesis
