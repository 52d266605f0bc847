#include "gsf/campaign.hpp"

#include "gsf/gauss.hpp"
#include "gsf/rng.hpp"
#include "gsf/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gsf {

namespace {

using nlohmann::json;

constexpr double inf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// T2 for one trial: the factor sequence and the alternating q = 4 sequence
// are the two separately measured classes; everything else relaxes like the
// factor sequence.
double t2_for(const CampaignConfig& cfg, const ReducedResidue& r) {
    if (r.q == 4 && cfg.t2_worst) return *cfg.t2_worst;
    return cfg.dec.t2;
}

// finite double -> json number, infinity -> json null (T2 may be infinite)
json json_of(double x) { return std::isfinite(x) ? json(x) : json(); }

double double_of(const json& j, const char* what) {
    if (j.is_null()) return inf;
    if (!j.is_number())
        throw std::invalid_argument(std::string("report json: ") + what +
                                    " must be a number or null");
    return j.get<double>();
}

} // namespace

void CampaignConfig::validate() const {
    if (n < 2) throw std::invalid_argument("campaign: n must be at least 2");
    if (l_max < 2) throw std::invalid_argument("campaign: l_max must be at least 2");
    schedule.validate();
    if (schedule.m_max != m_max)
        throw std::invalid_argument("campaign: schedule.m_max must equal m_max");
    dec.validate();
    if (dec.t1 != inf)
        throw std::invalid_argument(
            "campaign: amplitude damping is not part of the campaign model; leave t1 infinite");
    if (dec.delta_omega != 0.0)
        throw std::invalid_argument(
            "campaign: constant detuning is not supported; use detune_max for random detuning");
    if (t2_worst && !(*t2_worst > 0.0))
        throw std::invalid_argument("campaign: t2_worst must be positive");
    if (!(measurement_sigma >= 0.0) || !std::isfinite(measurement_sigma))
        throw std::invalid_argument("campaign: measurement_sigma must be finite and >= 0");
    if (!(detune_max >= 0.0) || !std::isfinite(detune_max))
        throw std::invalid_argument("campaign: detune_max must be finite and >= 0");
    if (detune_max > 0.0 && shots < 1)
        throw std::invalid_argument("campaign: shots must be >= 1 when detuning is on");
}

uint64_t worst_surviving_q(PreprocessLevel level) {
    switch (level) {
        case PreprocessLevel::None: return 4;
        case PreprocessLevel::Basic: return 9;
        case PreprocessLevel::Extended: return 13;
    }
    return 4;
}

IdentifyResult identify(const std::map<uint64_t, double>& signals, double cutoff) {
    IdentifyResult out;
    for (const auto& [l, s] : signals) {
        if (s > cutoff)
            out.factors.insert(l);
        else if (s == cutoff)
            out.ties.insert(l);
    }
    return out;
}

FactorizationReport run_campaign(const CampaignConfig& config) {
    config.validate();
    FactorizationReport rep;
    rep.config = config;

    if (config.preprocess == PreprocessLevel::None) {
        rep.pre = PreprocessRecord{};
        rep.pre.reduced_n = config.n;
    } else {
        rep.pre = preprocess(config.n, config.preprocess == PreprocessLevel::Extended);
    }
    uint64_t n_eff = rep.pre.reduced_n;
    if (n_eff == 1)
        rep.warnings.push_back("classical preprocessing fully factored n; "
                               "the trial signals below carry no information");

    double tau0 = config.schedule.interval();
    double x_factor = tau0 / config.dec.t2;

    // decision threshold: midpoint between the predicted factor signal and
    // the predicted signal of the worst ghost class that preprocessing lets
    // through, each decaying with its own T2
    rep.worst_q = worst_surviving_q(config.preprocess);
    double x_worst = tau0 / t2_for(config, {1, rep.worst_q});
    double s_factor = 0.5 * (1.0 + noisy_gauss_factor_closed(config.m_max, x_factor));
    double s_worst =
        0.5 * (1.0 + noisy_gauss_sum(config.m_max, {1, rep.worst_q}, x_worst));
    rep.cutoff = 0.5 * (s_factor + s_worst);

    uint64_t m_lower = type_i_pulse_floor(n_eff);
    auto ls = trial_factors(n_eff, config.l_max, config.preprocess);
    rep.trials.reserve(ls.size());

    for (uint64_t l : ls) {
        TrialRecord t;
        t.l = l;
        t.residue = reduce_residue(n_eff, l);
        t.cls = classify(n_eff, l, m_lower, 0.1);
        t.ideal_signal = ideal_signal(config.m_max, n_eff, l);
        double x = tau0 / t2_for(config, t.residue);

        if (config.detune_max == 0.0) {
            if (config.measurement_sigma == 0.0) {
                // noiseless reduction: exactly the decayed mean
                t.signal = 0.5 * (1.0 + noisy_gauss_sum(config.m_max, t.residue, x));
            } else {
                RngStream noise(config.seed, 2 * l);
                double acc = 0.0;
                for (uint64_t m = 0; m <= config.m_max; ++m) {
                    double p = 0.5 * (1.0 + noisy_summand(m, t.residue, x));
                    double g = 1.0 + config.measurement_sigma * noise.normal();
                    acc += std::clamp(p * g, 0.0, 1.0);
                }
                t.signal = acc / static_cast<double>(config.m_max + 1);
            }
        } else {
            DecoherenceParams dec_l = config.dec;
            dec_l.t2 = t2_for(config, t.residue);
            auto phases = gauss_phases(n_eff, l, config.m_max);
            auto prof = monte_carlo_profile(config.schedule, phases, config.detune_max,
                                            config.shots, rng_key(config.seed, 2 * l + 1),
                                            dec_l);
            RngStream noise(config.seed, 2 * l);
            double acc = 0.0;
            double var = 0.0;
            for (uint64_t m = 0; m <= config.m_max; ++m) {
                double g = config.measurement_sigma == 0.0
                               ? 1.0
                               : 1.0 + config.measurement_sigma * noise.normal();
                double scaled = prof[m].mean * g;
                double clamped = std::clamp(scaled, 0.0, 1.0);
                acc += clamped;
                if (clamped == scaled) { // clamped points contribute no spread
                    double se = g * prof[m].std_err;
                    var += se * se;
                }
            }
            t.signal = acc / static_cast<double>(config.m_max + 1);
            t.std_err = std::sqrt(var) / static_cast<double>(config.m_max + 1);
        }
        rep.trials.push_back(t);
    }

    std::map<uint64_t, double> sig_map;
    for (const auto& t : rep.trials) sig_map[t.l] = t.signal;
    auto idr = identify(sig_map, rep.cutoff);
    rep.identified_factors = std::move(idr.factors);
    rep.ties = std::move(idr.ties);
    for (auto& t : rep.trials) {
        t.above_cutoff = rep.identified_factors.count(t.l) > 0;
        t.at_cutoff = rep.ties.count(t.l) > 0;
    }
    for (uint64_t l : rep.ties)
        rep.warnings.push_back("trial factor " + std::to_string(l) +
                               " sits exactly at the cutoff; counted as nonfactor");

    rep.discernability.predicted = discernability_exact(config.m_max, x_factor);
    if (config.t2_worst)
        rep.discernability.adjusted = adjusted_discernability(
            config.m_max, config.dec.t2, *config.t2_worst, tau0);

    bool any_factor = false, any_nonfactor = false;
    double min_factor = inf, max_nonfactor = -inf;
    for (const auto& t : rep.trials) {
        if (t.residue.is_factor()) {
            any_factor = true;
            min_factor = std::min(min_factor, t.signal);
        } else {
            any_nonfactor = true;
            max_nonfactor = std::max(max_nonfactor, t.signal);
        }
    }
    if (any_factor && any_nonfactor)
        rep.discernability.empirical =
            discernability_empirical(min_factor, max_nonfactor);

    if (any_nonfactor) {
        std::set<uint64_t> factor_set;
        for (const auto& t : rep.trials)
            if (t.residue.is_factor()) factor_set.insert(t.l);
        rep.contrast = contrast(sig_map, factor_set);
    } else {
        rep.warnings.push_back("no nonfactor trial factors in range; contrast omitted");
    }
    return rep;
}

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown report format: " + s);
}

std::string trials_to_csv(const std::vector<TrialRecord>& trials) {
    std::string out = "l,p,q,class,signal,std_err,above_cutoff\n";
    for (const auto& t : trials) {
        out += std::to_string(t.l);
        out += ',';
        out += std::to_string(t.residue.p);
        out += ',';
        out += std::to_string(t.residue.q);
        out += ',';
        out += to_string(t.cls);
        out += ',';
        out += format_double(t.signal);
        out += ',';
        out += format_double(t.std_err);
        out += ',';
        out += t.above_cutoff ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::vector<TrialRecord> trials_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("report csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "l,p,q,class,signal,std_err,above_cutoff")
        throw std::invalid_argument("report csv: unexpected header '" + line + "'");
    std::vector<TrialRecord> out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_fields(line);
        if (f.size() != 7)
            throw std::invalid_argument("report csv: expected 7 columns, got " +
                                        std::to_string(f.size()));
        TrialRecord t;
        t.l = parse_u64(f[0], "l");
        t.residue.p = parse_u64(f[1], "p");
        t.residue.q = parse_u64(f[2], "q");
        t.cls = trial_class_from_string(std::string(f[3]));
        t.signal = parse_double(f[4], "signal");
        t.std_err = parse_double(f[5], "std_err");
        if (f[6] == "true")
            t.above_cutoff = true;
        else if (f[6] == "false")
            t.above_cutoff = false;
        else
            throw std::invalid_argument("report csv: bad above_cutoff value '" +
                                        std::string(f[6]) + "'");
        out.push_back(t);
    }
    return out;
}

std::string report_to_csv(const FactorizationReport& report) {
    return trials_to_csv(report.trials);
}

std::string report_to_json(const FactorizationReport& report) {
    const CampaignConfig& c = report.config;
    json cfg{{"number", c.n},
             {"lmax", c.l_max},
             {"pulses", c.m_max},
             {"tau", c.schedule.tau},
             {"tpi", c.schedule.t_pi},
             {"t2", json_of(c.dec.t2)},
             {"t2_worst", c.t2_worst ? json(*c.t2_worst) : json()},
             {"preprocess", to_string(c.preprocess)},
             {"sigma", c.measurement_sigma},
             {"detune_max", c.detune_max},
             {"shots", c.shots},
             {"seed", c.seed}};
    json pre{{"n2", report.pre.n2},
             {"n5", report.pre.n5},
             {"n9", report.pre.n9 ? json(*report.pre.n9) : json()},
             {"reduced_n", report.pre.reduced_n}};
    json disc{{"predicted", report.discernability.predicted},
              {"adjusted", report.discernability.adjusted
                               ? json(*report.discernability.adjusted)
                               : json()},
              {"empirical", report.discernability.empirical
                                ? json(*report.discernability.empirical)
                                : json()}};
    json trials = json::array();
    for (const auto& t : report.trials)
        trials.push_back(json{{"l", t.l},
                              {"p", t.residue.p},
                              {"q", t.residue.q},
                              {"class", to_string(t.cls)},
                              {"ideal_signal", t.ideal_signal},
                              {"signal", t.signal},
                              {"std_err", t.std_err},
                              {"above_cutoff", t.above_cutoff},
                              {"at_cutoff", t.at_cutoff}});
    json j{{"config", cfg},
           {"preprocess", pre},
           {"worst_q", report.worst_q},
           {"cutoff", report.cutoff},
           {"discernability", disc},
           {"contrast", report.contrast ? json{{"v_value", report.contrast->v_value},
                                               {"a_mean", report.contrast->a_mean}}
                                        : json()},
           {"identified_factors", report.identified_factors},
           {"ties", report.ties},
           {"warnings", report.warnings},
           {"trials", trials}};
    return j.dump(2) + "\n";
}

FactorizationReport report_from_json(const std::string& text) {
    json j = json::parse(text);
    FactorizationReport rep;

    const json& cfg = j.at("config");
    CampaignConfig& c = rep.config;
    c.n = cfg.at("number").get<uint64_t>();
    c.l_max = cfg.at("lmax").get<uint64_t>();
    c.m_max = cfg.at("pulses").get<uint64_t>();
    c.schedule = PulseSchedule::make(cfg.at("tau").get<double>(),
                                     cfg.at("tpi").get<double>(), c.m_max);
    c.dec.t2 = double_of(cfg.at("t2"), "t2");
    if (!cfg.at("t2_worst").is_null()) c.t2_worst = cfg.at("t2_worst").get<double>();
    c.preprocess = preprocess_level_from_string(cfg.at("preprocess").get<std::string>());
    c.measurement_sigma = cfg.at("sigma").get<double>();
    c.detune_max = cfg.at("detune_max").get<double>();
    c.shots = cfg.at("shots").get<uint64_t>();
    c.seed = cfg.at("seed").get<uint64_t>();

    const json& pre = j.at("preprocess");
    rep.pre.n2 = pre.at("n2").get<int>();
    rep.pre.n5 = pre.at("n5").get<int>();
    if (!pre.at("n9").is_null()) rep.pre.n9 = pre.at("n9").get<int>();
    rep.pre.reduced_n = pre.at("reduced_n").get<uint64_t>();

    rep.worst_q = j.at("worst_q").get<uint64_t>();
    rep.cutoff = j.at("cutoff").get<double>();

    const json& disc = j.at("discernability");
    rep.discernability.predicted = disc.at("predicted").get<double>();
    if (!disc.at("adjusted").is_null())
        rep.discernability.adjusted = disc.at("adjusted").get<double>();
    if (!disc.at("empirical").is_null())
        rep.discernability.empirical = disc.at("empirical").get<double>();

    if (!j.at("contrast").is_null()) {
        ContrastReport cr;
        cr.v_value = j.at("contrast").at("v_value").get<double>();
        cr.a_mean = j.at("contrast").at("a_mean").get<double>();
        rep.contrast = cr;
    }
    for (const auto& l : j.at("identified_factors"))
        rep.identified_factors.insert(l.get<uint64_t>());
    for (const auto& l : j.at("ties")) rep.ties.insert(l.get<uint64_t>());
    for (const auto& w : j.at("warnings")) rep.warnings.push_back(w.get<std::string>());

    for (const auto& tj : j.at("trials")) {
        TrialRecord t;
        t.l = tj.at("l").get<uint64_t>();
        t.residue.p = tj.at("p").get<uint64_t>();
        t.residue.q = tj.at("q").get<uint64_t>();
        t.cls = trial_class_from_string(tj.at("class").get<std::string>());
        t.ideal_signal = tj.at("ideal_signal").get<double>();
        t.signal = tj.at("signal").get<double>();
        t.std_err = tj.at("std_err").get<double>();
        t.above_cutoff = tj.at("above_cutoff").get<bool>();
        t.at_cutoff = tj.at("at_cutoff").get<bool>();
        rep.trials.push_back(t);
    }
    return rep;
}

void emit_report(const FactorizationReport& report, ReportFormat format,
                 const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << (format == ReportFormat::Csv ? report_to_csv(report)
                                        : report_to_json(report));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::map<std::string, std::string> parse_flat_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not 'key = value': " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line has an empty key: " + line);
        if (kv.count(key))
            throw std::invalid_argument("duplicate config key: " + key);
        kv[key] = val;
    }
    return kv;
}

std::map<std::string, std::string> read_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_flat_config(buf.str());
}

CampaignConfig config_from_entries(const std::map<std::string, std::string>& kv) {
    static const std::set<std::string> known = {
        "number", "lmax",  "pulses",     "tau",   "tpi",  "t2",  "t2-worst",
        "preprocess", "sigma", "detune-max", "shots", "seed", "out", "format"};
    for (const auto& [k, v] : kv)
        if (!known.count(k)) throw std::invalid_argument("unknown config key: " + k);
    auto need = [&](const char* k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end())
            throw std::invalid_argument(std::string("config is missing required key: ") + k);
        return it->second;
    };
    auto get = [&](const char* k) -> const std::string* {
        auto it = kv.find(k);
        return it == kv.end() ? nullptr : &it->second;
    };
    CampaignConfig c;
    c.n = parse_u64(need("number"), "number");
    c.l_max = parse_u64(need("lmax"), "lmax");
    c.m_max = parse_u64(need("pulses"), "pulses");
    c.schedule = PulseSchedule::make(parse_double(need("tau"), "tau"),
                                     parse_double(need("tpi"), "tpi"), c.m_max);
    c.dec.t2 = parse_double(need("t2"), "t2");
    if (const auto* s = get("t2-worst")) c.t2_worst = parse_double(*s, "t2-worst");
    if (const auto* s = get("preprocess")) c.preprocess = preprocess_level_from_string(*s);
    if (const auto* s = get("sigma")) c.measurement_sigma = parse_double(*s, "sigma");
    if (const auto* s = get("detune-max")) c.detune_max = parse_double(*s, "detune-max");
    if (const auto* s = get("shots")) c.shots = parse_u64(*s, "shots");
    if (const auto* s = get("seed")) c.seed = parse_u64(*s, "seed");
    c.validate();
    return c;
}

} // namespace gsf
