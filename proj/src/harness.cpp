#include "edgewalk/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "edgewalk/census.hpp"
#include "edgewalk/multigraph.hpp"
#include "edgewalk/rng.hpp"
#include "edgewalk/stats.hpp"

namespace edgewalk {

void ScenarioConfig::validate() const {
    if (r < 3) throw std::invalid_argument("config: r must be at least 3");
    if (ns.empty()) throw std::invalid_argument("config: n list is empty");
    for (auto n : ns) {
        if (n == 0) throw std::invalid_argument("config: n must be positive");
        if ((std::uint64_t{n} * r) % 2 != 0)
            throw std::invalid_argument("config: rn must be even (n = " + std::to_string(n) + ")");
    }
    if (seeds == 0) throw std::invalid_argument("config: seeds must be at least 1");
    if (workers == 0) throw std::invalid_argument("config: workers must be at least 1");
    for (double d : deltas)
        if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("config: deltas must lie in (0, 1)");
    if (format != "csv" && format != "json") throw std::invalid_argument("config: format must be csv or json");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty()) out.push_back(t);
    return out;
}

std::uint64_t parse_count(const std::string& s) {
    if (const auto caret = s.find('^'); caret != std::string::npos) {
        const auto base = std::stoull(s.substr(0, caret));
        const auto exp = std::stoull(s.substr(caret + 1));
        std::uint64_t v = 1;
        for (std::uint64_t i = 0; i < exp; ++i) v *= base;
        return v;
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& s) {
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw std::invalid_argument("bad boolean '" + s + "'");
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "name") c.name = value;
            else if (key == "mode") c.mode = parse_walk_mode(value);
            else if (key == "r") c.r = static_cast<std::uint32_t>(parse_count(value));
            else if (key == "n") {
                c.ns.clear();
                for (const auto& v : split_list(value)) c.ns.push_back(static_cast<std::uint32_t>(parse_count(v)));
            } else if (key == "seeds") c.seeds = static_cast<std::uint32_t>(parse_count(value));
            else if (key == "stop") c.stop = parse_stop_condition(value);
            else if (key == "deltas") {
                c.deltas.clear();
                for (const auto& v : split_list(value)) c.deltas.push_back(std::stod(v));
            } else if (key == "exposure") c.exposure = parse_bool(value);
            else if (key == "seed") c.master_seed = std::stoull(value);
            else if (key == "workers") c.workers = static_cast<unsigned>(parse_count(value));
            else if (key == "out") c.out_dir = value;
            else if (key == "format") c.format = value;
            else if (key == "keep_milestones") c.keep_milestones = parse_bool(value);
            else if (key == "wall_budget") c.wall_budget_seconds = std::stod(value);
            else throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    c.validate();
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    return parse_config(in);
}

std::uint64_t task_seed(std::uint64_t master, std::uint32_t n, std::uint32_t seed_index) {
    return derive_seed(master, n, seed_index);
}

namespace {

ScenarioRow run_task(const ScenarioConfig& config, std::uint32_t n, std::uint32_t seed_index) {
    ScenarioRow row;
    row.n = n;
    row.seed_index = seed_index;
    row.seed = task_seed(config.master_seed, n, seed_index);

    WalkOptions options;
    options.mode = config.mode;
    options.stop = config.stop;
    options.seed = row.seed;
    options.record_trajectory = !config.deltas.empty();
    const WalkRecord rec = config.exposure
                               ? run_walk_exposure(n, config.r, options)
                               : run_walk(Multigraph::configuration_model(n, config.r, derive_seed(row.seed, 0x67)),
                                          options);
    row.vertex_cover = rec.vertex_cover;
    row.edge_cover = rec.edge_cover;
    row.steps = rec.steps;
    row.stop_reason = rec.stop_reason;

    if (!config.deltas.empty()) {
        std::vector<MilestoneSample> samples;
        for (double d : config.deltas) {
            MilestoneSample s;
            s.t = t_for_delta(n, config.r, d);
            s.delta = delta_for_t(n, config.r, s.t);
            if (s.t >= 1 && s.t <= rec.edges_discovered()) s.c_t = rec.milestone(s.t);
            if (s.t >= 1 && s.t + 1 <= rec.edges_discovered()) s.increment = increment_sample(rec, s.t);
            samples.push_back(s);
        }
        std::vector<std::size_t> order(samples.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return samples[a].t < samples[b].t; });
        std::vector<std::uint64_t> ts;
        std::vector<std::size_t> which;
        for (auto i : order)
            if (samples[i].c_t) {
                ts.push_back(samples[i].t);
                which.push_back(i);
            }
        if (!ts.empty()) {
            const auto snaps = colour_snapshots(rec, regular_offsets(n, config.r), ts);
            for (std::size_t k = 0; k < snaps.size(); ++k) {
                auto& s = samples[which[k]];
                s.x1_green = snaps[k].x1_green;
                s.z = snaps[k].z;
                s.phi = snaps[k].phi;
                s.unvisited = snaps[k].unvisited_vertices();
            }
        }
        row.samples = std::move(samples);
    }
    if (config.keep_milestones) {
        row.milestones = rec.milestones;
        row.vertex_milestones = rec.vertex_milestones;
    }
    return row;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const std::function<void(const ScenarioRow&)>& sink) {
    config.validate();
    struct Task {
        std::uint32_t n;
        std::uint32_t seed_index;
    };
    std::vector<Task> tasks;
    for (auto n : config.ns)
        for (std::uint32_t s = 0; s < config.seeds; ++s) tasks.push_back({n, s});

    enum class SlotState { pending, done, skipped, failed };
    std::vector<ScenarioRow> rows(tasks.size());
    std::vector<SlotState> state(tasks.size(), SlotState::pending);
    std::exception_ptr error;
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            SlotState outcome = SlotState::done;
            ScenarioRow row;
            if (config.wall_budget_seconds > 0.0 && elapsed() > config.wall_budget_seconds) {
                outcome = SlotState::skipped;
            } else {
                try {
                    row = run_task(config, tasks[i].n, tasks[i].seed_index);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!error) error = std::current_exception();
                    outcome = SlotState::failed;
                }
            }
            {
                std::lock_guard lock(mu);
                rows[i] = std::move(row);
                state[i] = outcome;
            }
            cv.notify_all();
        }
    };

    const unsigned workers = std::min<std::size_t>(config.workers, std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);

    ScenarioResult result;
    result.config = config;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return state[i] != SlotState::pending; });
        if (state[i] == SlotState::done) {
            const ScenarioRow& row = rows[i];
            lock.unlock();
            if (sink && !error) sink(row);
        } else if (state[i] == SlotState::skipped) {
            ++result.skipped;
        }
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (state[i] != SlotState::done) continue;
        if (rows[i].stop_reason != StopReason::reached) ++result.flagged;
        result.rows.push_back(std::move(rows[i]));
    }
    result.seconds = elapsed();
    return result;
}

ConstantEstimate estimate_constant(std::span<const ScenarioRow> rows, CoverTarget target, double target_constant) {
    std::map<std::uint32_t, std::vector<double>> by_n;
    for (const auto& row : rows) {
        if (row.stop_reason != StopReason::reached) continue;
        const auto& value = target == CoverTarget::vertex ? row.vertex_cover : row.edge_cover;
        if (value) by_n[row.n].push_back(static_cast<double>(*value));
    }
    if (by_n.size() < 3) throw std::invalid_argument("estimate_constant: need at least three distinct n values");

    ConstantEstimate est;
    est.target = target_constant;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [n, values] : by_n) {
        const auto m = mean_se(values);
        const double x = n * std::log(static_cast<double>(n));
        est.per_n.push_back({n, m.mean, m.se, m.count, m.mean / x});
        sxx += x * x;
        sxy += x * m.mean;
    }
    est.constant = sxy / sxx;
    double rss = 0.0;
    for (const auto& p : est.per_n) {
        const double x = p.n * std::log(static_cast<double>(p.n));
        rss += (p.mean - est.constant * x) * (p.mean - est.constant * x);
    }
    est.se = std::sqrt(rss / (est.per_n.size() - 1) / sxx);
    return est;
}

double theoretical_constant(WalkMode mode, std::uint32_t r, CoverTarget target) {
    const double rr = r;
    switch (mode) {
        case WalkMode::biased:
            if (r % 2 == 0) return std::numeric_limits<double>::quiet_NaN();
            return target == CoverTarget::vertex ? 1.0 / (rr - 2.0) : rr / (2.0 * (rr - 2.0));
        case WalkMode::simple:
            return target == CoverTarget::vertex ? (rr - 1.0) / (rr - 2.0) : rr * (rr - 1.0) / (2.0 * (rr - 2.0));
        case WalkMode::non_backtracking:
            return target == CoverTarget::vertex ? 1.0 : rr / 2.0;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<CurvePoint> partial_cover_curve(std::span<const ScenarioRow> rows, std::uint32_t r,
                                            std::span<const std::uint64_t> t_grid,
                                            std::span<const std::uint64_t> s_grid) {
    std::map<std::uint32_t, std::vector<const ScenarioRow*>> by_n;
    for (const auto& row : rows) by_n[row.n].push_back(&row);
    std::vector<CurvePoint> out;
    const double rr = r;
    for (const auto& [n, group] : by_n) {
        const double nn = n;
        const double rn = rr * nn;
        const double ln = std::log(nn);
        for (auto t : t_grid) {
            std::vector<double> values;
            for (const auto* row : group) {
                if (t == 0 || t > row->milestones.size())
                    throw std::out_of_range("partial_cover_curve: t beyond recorded milestones");
                values.push_back(static_cast<double>(row->milestones[t - 1]));
            }
            const auto m = mean_se(values);
            CurvePoint p;
            p.kind = CoverTarget::edge;
            p.n = n;
            p.index = t;
            p.mean = m.mean;
            p.se = m.se;
            p.predicted = rr / (2.0 * (rr - 2.0)) * nn * std::log(rn / (rn - 2.0 * t + 1.0));
            p.in_window = t >= t_for_delta(n, r, 1.0 / (ln * ln)) && 2 * t <= std::uint64_t{n} * r;
            out.push_back(p);
        }
        for (auto s : s_grid) {
            std::vector<double> values;
            for (const auto* row : group) {
                if (s == 0 || s > row->vertex_milestones.size())
                    throw std::out_of_range("partial_cover_curve: s beyond recorded vertex milestones");
                values.push_back(static_cast<double>(row->vertex_milestones[s - 1]));
            }
            const auto m = mean_se(values);
            CurvePoint p;
            p.kind = CoverTarget::vertex;
            p.n = n;
            p.index = s;
            p.mean = m.mean;
            p.se = m.se;
            p.predicted = 1.0 / (rr - 2.0) * nn * std::log(nn / (nn - s + 1.0));
            p.in_window = s <= n && static_cast<double>(s) >= nn - nn / (ln * ln);
            out.push_back(p);
        }
    }
    return out;
}

namespace {

std::string_view reason_name(StopReason r) {
    switch (r) {
        case StopReason::reached: return "reached";
        case StopReason::trapped: return "trapped";
        case StopReason::budget: return "budget";
    }
    return "unknown";
}

template <class T>
std::string opt(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::string delta_tag(double d) {
    std::ostringstream s;
    s << d;
    return s.str();
}

nlohmann::ordered_json row_json(const ScenarioRow& row, const ScenarioConfig& config) {
    nlohmann::ordered_json j;
    j["n"] = row.n;
    j["seed_index"] = row.seed_index;
    j["seed"] = row.seed;
    j["C_V"] = row.vertex_cover ? nlohmann::ordered_json(*row.vertex_cover) : nlohmann::ordered_json();
    j["C_E"] = row.edge_cover ? nlohmann::ordered_json(*row.edge_cover) : nlohmann::ordered_json();
    j["steps"] = row.steps;
    j["stop_reason"] = reason_name(row.stop_reason);
    for (std::size_t i = 0; i < row.samples.size() && i < config.deltas.size(); ++i) {
        const auto& s = row.samples[i];
        const auto tag = delta_tag(config.deltas[i]);
        j["t_" + tag] = s.t;
        j["C_" + tag] = s.c_t ? nlohmann::ordered_json(*s.c_t) : nlohmann::ordered_json();
        j["inc_" + tag] = s.increment ? nlohmann::ordered_json(*s.increment) : nlohmann::ordered_json();
        j["X1g_" + tag] = s.x1_green;
        j["Z_" + tag] = s.z;
        j["Phi_" + tag] = s.phi;
        j["Xr_" + tag] = s.unvisited;
    }
    return j;
}

}  // namespace

void write_csv_header(std::ostream& out, const ScenarioConfig& config) {
    out << "n,seed_index,seed,C_V,C_E,steps,stop_reason";
    for (double d : config.deltas) {
        const auto tag = delta_tag(d);
        out << ",t_" << tag << ",C_" << tag << ",inc_" << tag << ",X1g_" << tag << ",Z_" << tag << ",Phi_" << tag
            << ",Xr_" << tag;
    }
    out << '\n';
}

void write_row_csv(std::ostream& out, const ScenarioRow& row, const ScenarioConfig& config) {
    out << row.n << ',' << row.seed_index << ',' << row.seed << ',' << opt(row.vertex_cover) << ','
        << opt(row.edge_cover) << ',' << row.steps << ',' << reason_name(row.stop_reason);
    for (std::size_t i = 0; i < config.deltas.size(); ++i) {
        if (i < row.samples.size()) {
            const auto& s = row.samples[i];
            out << ',' << s.t << ',' << opt(s.c_t) << ',' << opt(s.increment) << ',' << s.x1_green << ',' << s.z
                << ',' << s.phi << ',' << s.unvisited;
        } else {
            out << ",,,,,,,";
        }
    }
    out << '\n';
}

void write_rows_csv(std::ostream& out, std::span<const ScenarioRow> rows, const ScenarioConfig& config) {
    write_csv_header(out, config);
    for (const auto& row : rows) write_row_csv(out, row, config);
}

void write_row_json(std::ostream& out, const ScenarioRow& row, const ScenarioConfig& config) {
    out << row_json(row, config).dump();
}

void write_rows_json(std::ostream& out, std::span<const ScenarioRow> rows, const ScenarioConfig& config) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) arr.push_back(row_json(row, config));
    out << arr.dump(1) << '\n';
}

}  // namespace edgewalk
