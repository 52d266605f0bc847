// gsfactor: drive Gauss-sum factorization campaigns and the supporting
// figure-of-merit calculations from the command line. Subcommands write
// plot-ready CSV (or a JSON report) and print scalar results as key = value
// lines. Exit codes: 0 ok, 2 bad configuration, 3 numeric failure.

#include <CLI11.hpp>

#include "gsf/campaign.hpp"
#include "gsf/decoherence.hpp"
#include "gsf/filter.hpp"
#include "gsf/qubit.hpp"
#include "gsf/residue.hpp"
#include "gsf/textio.hpp"

#include <cstdint>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace {

struct ParsedResidue {
    uint64_t p = 0;
    uint64_t q = 1;
};

ParsedResidue parse_residue(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("--residue wants P/Q, got '" + text + "'");
    ParsedResidue r;
    r.p = gsf::parse_u64(text.substr(0, slash), "residue numerator");
    r.q = gsf::parse_u64(text.substr(slash + 1), "residue denominator");
    if (r.q == 0) throw std::invalid_argument("--residue denominator must be positive");
    if (r.p >= r.q && !(r.p == 0 && r.q == 1))
        throw std::invalid_argument("--residue wants a fractional part, p < q");
    uint64_t g = std::gcd(r.p == 0 ? r.q : r.p, r.q);
    r.p /= g;
    r.q /= g;
    return r;
}

gsf::SpectralDensity make_density(const std::string& spec, double sigma) {
    if (spec == "white") return gsf::SpectralDensity::white(sigma);
    if (spec == "pink") return gsf::SpectralDensity::one_over_f(sigma);
    // anything else names a CSV table; rescale it to the requested rms
    gsf::SpectralDensity d = gsf::read_spectrum_csv(spec);
    if (sigma > 0.0 && d.sigma > 0.0 && sigma != d.sigma) {
        double scale = (sigma / d.sigma) * (sigma / d.sigma);
        for (auto& [w, s] : d.table) s *= scale;
        d = gsf::SpectralDensity::tabulated(std::move(d.table));
    }
    return d;
}

void print_kv(const char* key, double value) {
    std::cout << key << " = " << gsf::format_double(value) << "\n";
}

void print_kv(const char* key, uint64_t value) {
    std::cout << key << " = " << value << "\n";
}

int run_factorize(const std::map<std::string, std::string>& entries,
                  const std::string& out, const std::string& format) {
    gsf::CampaignConfig config = gsf::config_from_entries(entries);
    gsf::FactorizationReport report = gsf::run_campaign(config);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    gsf::ReportFormat fmt = gsf::report_format_from_string(format);
    if (!out.empty()) {
        gsf::emit_report(report, fmt, out);
        return 0;
    }
    std::cout << (fmt == gsf::ReportFormat::Json ? gsf::report_to_json(report)
                                                 : gsf::report_to_csv(report));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gauss-sum factorization toolkit"};
    app.require_subcommand(1);

    // factorize: every value stays a string until the shared config builder
    // parses it, so a config file and the flags go through identical checks
    auto* factorize = app.add_subcommand(
        "factorize", "run a trial-factor campaign and emit the report");
    std::string cfg_path;
    factorize->add_option("--config", cfg_path,
                          "flat key = value file with defaults; flags override");
    std::map<std::string, std::string> flag_values;
    std::vector<std::pair<std::string, std::string>> campaign_flags = {
        {"number", "integer to factorize"},
        {"lmax", "highest trial factor"},
        {"pulses", "pulse count M"},
        {"tau", "inter-pulse delay, ns"},
        {"tpi", "pi-pulse duration, ns"},
        {"t2", "dephasing time, ns (inf allowed)"},
        {"t2-worst", "separate T2 for the q = 4 ghost class, ns"},
        {"preprocess", "none|basic|extended"},
        {"sigma", "multiplicative readout noise s.d."},
        {"detune-max", "detuning spread, rad/ns (switches on Monte Carlo)"},
        {"shots", "Monte Carlo shots per trial factor"},
        {"seed", "campaign seed"},
    };
    for (const auto& [name, help] : campaign_flags)
        factorize->add_option("--" + name, flag_values[name], help);
    std::string out_path;
    std::string format = "csv";
    factorize->add_option("--out", out_path, "write the report here instead of stdout");
    factorize->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* discern = app.add_subcommand(
        "discernability", "factor vs worst-ghost signal gap for a pulse train");
    uint64_t d_pulses = 0;
    double d_t2 = 0, d_tau = 0, d_tpi = 0;
    std::optional<double> d_t2_worst;
    discern->add_option("--pulses", d_pulses, "pulse count M")->required();
    discern->add_option("--t2", d_t2, "dephasing time, ns")->required();
    discern->add_option("--tau", d_tau, "inter-pulse delay, ns")->required();
    discern->add_option("--tpi", d_tpi, "pi-pulse duration, ns")->required();
    discern->add_option("--t2-worst", d_t2_worst, "separate ghost-class T2, ns");

    auto* mmax = app.add_subcommand(
        "mmax", "largest pulse count holding a target discernability");
    double m_target = 0, m_t2 = 0, m_tau = 0, m_tpi = 0;
    mmax->add_option("--target", m_target, "required discernability")->required();
    mmax->add_option("--t2", m_t2, "dephasing time, ns")->required();
    mmax->add_option("--tau", m_tau, "inter-pulse delay, ns")->required();
    mmax->add_option("--tpi", m_tpi, "pi-pulse duration, ns")->required();

    auto* prep = app.add_subcommand(
        "preprocess", "strip factors of 2 and 5 (and 9 with --extended)");
    uint64_t p_number = 0;
    bool p_extended = false;
    prep->add_option("--number", p_number, "integer to reduce")->required();
    prep->add_flag("--extended", p_extended, "also strip factors of 9");

    auto* filter_fn = app.add_subcommand(
        "filter-fn", "control resultant and filter matrix on a frequency grid");
    std::string f_residue;
    uint64_t f_pulses = 0;
    double f_tau = 0, f_tpi = 0, f_wmin = 0, f_wmax = 0;
    std::size_t f_points = 200;
    std::string f_out;
    filter_fn->add_option("--residue", f_residue, "trial-factor residue P/Q")->required();
    filter_fn->add_option("--pulses", f_pulses, "pulse count M")->required();
    filter_fn->add_option("--tau", f_tau, "inter-pulse delay, ns")->required();
    filter_fn->add_option("--tpi", f_tpi, "pi-pulse duration, ns")->required();
    filter_fn->add_option("--omega-min", f_wmin, "grid start, rad/ns")->required();
    filter_fn->add_option("--omega-max", f_wmax, "grid end, rad/ns")->required();
    filter_fn->add_option("--points", f_points, "grid size");
    filter_fn->add_option("--out", f_out, "CSV path")->required();

    auto* decay = app.add_subcommand(
        "decay", "coherence decay of a pulse train under a noise spectrum");
    std::string y_residue, y_spectrum, y_out;
    uint64_t y_pulses = 0;
    double y_tau = 0, y_tpi = 0, y_sigma = 0;
    decay->add_option("--residue", y_residue, "trial-factor residue P/Q")->required();
    decay->add_option("--pulses", y_pulses, "pulse count M")->required();
    decay->add_option("--tau", y_tau, "inter-pulse delay, ns")->required();
    decay->add_option("--tpi", y_tpi, "pi-pulse duration, ns")->required();
    decay->add_option("--spectrum", y_spectrum, "white|pink|CSV file")->required();
    decay->add_option("--sigma", y_sigma, "rms dephasing rate, rad/ns")->required();
    decay->add_option("--out", y_out, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (factorize->parsed()) {
            std::map<std::string, std::string> entries;
            if (!cfg_path.empty()) entries = gsf::read_flat_config(cfg_path);
            for (const auto& [name, value] : flag_values)
                if (factorize->count("--" + name)) entries[name] = value;
            if (auto it = entries.find("out"); it != entries.end()) {
                if (out_path.empty()) out_path = it->second;
            }
            if (auto it = entries.find("format"); it != entries.end()) {
                if (!factorize->count("--format")) format = it->second;
            }
            return run_factorize(entries, out_path, format);
        }
        if (discern->parsed()) {
            double tau0 = d_tau + d_tpi;
            if (d_t2 <= 0.0 || tau0 <= 0.0)
                throw std::invalid_argument("t2 and tau + tpi must be positive");
            double x = tau0 / d_t2;
            print_kv("d_closed", gsf::discernability_closed(d_pulses, x));
            print_kv("d_exact", gsf::discernability_exact(d_pulses, x));
            if (d_t2_worst) {
                auto rep = gsf::discernability_report(d_pulses, d_t2, *d_t2_worst, tau0);
                print_kv("d_adjusted", rep.d_value);
            }
            return 0;
        }
        if (mmax->parsed()) {
            uint64_t m = gsf::max_pulse_count(m_target, m_t2, m_tau + m_tpi);
            auto bound = gsf::largest_factorizable(m);
            print_kv("m_max", m);
            print_kv("n_bound", bound.n_bound);
            print_kv("log10_n_bound", bound.log10_bound);
            return 0;
        }
        if (prep->parsed()) {
            auto rec = gsf::preprocess(p_number, p_extended);
            print_kv("n2", static_cast<uint64_t>(rec.n2));
            print_kv("n5", static_cast<uint64_t>(rec.n5));
            if (rec.n9) print_kv("n9", static_cast<uint64_t>(*rec.n9));
            print_kv("reduced_n", rec.reduced_n);
            return 0;
        }
        if (filter_fn->parsed()) {
            auto r = parse_residue(f_residue);
            auto schedule = gsf::PulseSchedule::make(f_tau, f_tpi, f_pulses);
            auto phases = gsf::residue_phases(r.p, r.q, f_pulses);
            auto cs = gsf::control_spectrum(f_pulses, schedule, phases, f_wmin,
                                            f_wmax, f_points);
            gsf::write_control_spectrum_csv(cs, f_out);
            return 0;
        }
        if (decay->parsed()) {
            auto r = parse_residue(y_residue);
            auto schedule = gsf::PulseSchedule::make(y_tau, y_tpi, y_pulses);
            auto phases = gsf::residue_phases(r.p, r.q, y_pulses);
            auto density = make_density(y_spectrum, y_sigma);
            auto env = gsf::decay_envelope(y_pulses, schedule, phases, density);
            gsf::write_decay_envelope_csv(env, schedule, y_out);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
