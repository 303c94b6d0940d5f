#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "genesis/baselines.hpp"
#include "genesis/evolution.hpp"

namespace genesis {

/// One experiment configuration. The canonical name is
/// "{n_sfcrs}_{scale}_{variant}_{bandwidth}_{cpu}", e.g. "48_1_B_5_0.5".
struct Scenario {
    int n_sfcrs{32};
    int traffic_scale{1};
    TrafficVariant variant{TrafficVariant::A};
    double link_bandwidth{10.0};
    double host_cpu{1.0};

    std::string name() const;
    static Scenario parse(const std::string& name);
};

/// The full 48-scenario cross product, deterministic order.
std::vector<Scenario> scenario_grid();

enum class Algorithm { Genesis, Bega100, Bega2000, Gda };

std::string to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(const std::string& name);

/// Sectioned key = value text, '#' and ';' comments.
class IniFile {
public:
    static IniFile parse(std::istream& is);
    static IniFile load(const std::filesystem::path& path);

    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    void set(const std::string& section, const std::string& key, const std::string& value);
    void write(std::ostream& os) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
    std::vector<std::string> section_order_;
};

/// Every tunable constant in one place, overridable from an ini file.
struct Config {
    // topology
    int k{4};
    double propagation_delay_ms{0.1};
    double host_memory_gb{5.0};
    // workload
    VnfCatalog catalog;
    double traffic_base{20.0};
    double traffic_amplitude{80.0};
    std::vector<SfcRequest> templates;  // defaults to catalog_sfcrs()
    // solvers
    double placement_sigma{2.0};
    int anchor_host{0};
    // netsim
    SimConstants sim;
    // evolution (seed comes from the run)
    EvolutionConfig evolution;

    static Config defaults();
    void apply(const IniFile& ini);
    void write(IniFile& ini) const;
};

struct RunRecord {
    std::string scenario;
    std::string algorithm;
    std::uint64_t seed{0};
    bool converged{false};
    int generations_used{0};
    double final_acceptance_ratio{0.0};
    double final_avg_latency_ms{0.0};
    std::uint64_t evals_surrogate{0};
    std::uint64_t evals_online{0};
    double wall_ms{0.0};
};

/// Owns the assembled problem instance behind a ScenarioContext.
struct ScenarioInstance {
    Topology topology;
    PredictorSet predictors;
    ScenarioContext context;  // points into the members above

    ScenarioInstance(Topology topo, PredictorSet preds)
        : topology(std::move(topo)), predictors(std::move(preds)) {}
    ScenarioInstance(const ScenarioInstance&) = delete;
    ScenarioInstance& operator=(const ScenarioInstance&) = delete;
    ScenarioInstance(ScenarioInstance&&) = delete;
};

/// Builds topology, workload, predictors and the evaluation context for one
/// (scenario, seed) pair.
std::unique_ptr<ScenarioInstance> build_instance(const Scenario& scenario, const Config& cfg,
                                                 std::uint64_t seed);

/// Executes one run and persists manifest.txt, history.csv, record.txt,
/// egs.txt and per_sfc_latency.csv under
/// out_dir/<algorithm>/<scenario>/<seed>/.
RunRecord run(const Scenario& scenario, Algorithm algorithm, std::uint64_t seed,
              const Config& cfg, const std::filesystem::path& out_dir);

void write_history_csv(const std::vector<GenerationRecord>& history, std::ostream& os);

void write_record(const RunRecord& rec, std::ostream& os);
RunRecord read_record(const std::filesystem::path& path);

/// Recursively collects record.txt files under a results directory.
std::vector<RunRecord> collect_records(const std::filesystem::path& dir);

struct ReportRow {
    std::string algorithm;
    int runs{0};
    int converged{0};
    double gen_mean{0.0};
    int gen_min{0};
    int gen_max{0};
    double wall_mean_ms{0.0};
    double wall_min_ms{0.0};
    double wall_max_ms{0.0};
};

/// Per-algorithm convergence and timing summary. Throws on empty input.
std::vector<ReportRow> report(const std::vector<RunRecord>& records);
void write_report_table(const std::vector<ReportRow>& rows, std::ostream& os);
void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& os);

/// Deterministic double formatting for CSV/manifest output.
std::string format_double(double v);

}  // namespace genesis
