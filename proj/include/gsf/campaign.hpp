#pragma once

#include "gsf/decoherence.hpp"
#include "gsf/qubit.hpp"
#include "gsf/residue.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gsf {

// One full factorization run: which number, which trial factors, pulse
// timing, noise knobs, seed.
struct CampaignConfig {
    uint64_t n = 0;
    uint64_t l_max = 2;  // trial factors are drawn from [2, l_max]
    uint64_t m_max = 17; // pulses per trial factor
    PulseSchedule schedule;
    DecoherenceParams dec;          // factor-sequence relaxation
    std::optional<double> t2_worst; // separate T2 for the alternating q = 4 class
    PreprocessLevel preprocess = PreprocessLevel::None;
    double measurement_sigma = 0.04; // multiplicative readout noise per point
    double detune_max = 0.0;         // rad/ns; > 0 switches to Monte Carlo pulses
    uint64_t shots = 1;
    uint64_t seed = 1;

    // l_max >= 2, sigma >= 0, shots >= 1 when detuning is on, timing valid,
    // schedule.m_max consistent with m_max, no constant detuning offset
    void validate() const;
};

struct TrialRecord {
    uint64_t l = 0;
    ReducedResidue residue;
    TrialFactorClass cls = TrialFactorClass::WellBehaved;
    double ideal_signal = 0.0; // noiseless (1 + C)/2
    double signal = 0.0;       // with decay, readout noise, detuning average
    double std_err = 0.0;      // Monte Carlo only; 0 on the closed-form path
    bool above_cutoff = false;
    bool at_cutoff = false; // exactly at the cutoff: excluded but flagged
};

struct DiscernabilitySummary {
    double predicted = 0.0;         // factor vs q = 4 ghost, factor T2
    std::optional<double> adjusted; // present when a second T2 is configured
    std::optional<double> empirical; // 2 * (weakest factor - strongest nonfactor)
};

struct FactorizationReport {
    CampaignConfig config;
    PreprocessRecord pre;
    std::vector<TrialRecord> trials;
    uint64_t worst_q = 4; // ghost class the cutoff guards against
    double cutoff = 0.0;
    std::set<uint64_t> identified_factors;
    std::set<uint64_t> ties;
    DiscernabilitySummary discernability;
    std::optional<ContrastReport> contrast; // omitted when no nonfactors in range
    std::vector<std::string> warnings;
};

// Largest-plateau residue denominator that can survive each preprocessing
// level: q = 4 unfiltered; q = 9 once even trial factors and multiples of 5
// are gone (plateau 1/3); q = 13 once multiples of 9 are dropped too.
uint64_t worst_surviving_q(PreprocessLevel level);

// Signals above the cutoff are declared factors (strictly greater); exact
// ties are excluded and reported separately.
struct IdentifyResult {
    std::set<uint64_t> factors;
    std::set<uint64_t> ties;
};
IdentifyResult identify(const std::map<uint64_t, double>& signals, double cutoff);

// Run every trial factor, apply readout noise, identify factors against the
// predicted midpoint cutoff, and assemble the figures of merit. Deterministic
// under a fixed config: every random stream is keyed by (seed, l), so the
// evaluation order of trial factors cannot matter.
FactorizationReport run_campaign(const CampaignConfig& config);

enum class ReportFormat { Csv, Json };
ReportFormat report_format_from_string(const std::string& s);

// CSV carries the per-trial rows only; campaign-level values (cutoff,
// discernability, contrast) live in the JSON form so they appear once.
std::string trials_to_csv(const std::vector<TrialRecord>& trials);
std::vector<TrialRecord> trials_from_csv(const std::string& text);
std::string report_to_csv(const FactorizationReport& report);
std::string report_to_json(const FactorizationReport& report);
FactorizationReport report_from_json(const std::string& text);
void emit_report(const FactorizationReport& report, ReportFormat format,
                 const std::string& path);

// Flat `key = value` config text, one pair per line, '#' starts a comment.
// Keys are spelled exactly like the CLI flags (number, lmax, pulses, tau,
// tpi, t2, t2-worst, preprocess, sigma, detune-max, shots, seed); out and
// format are tolerated and left to the caller.
std::map<std::string, std::string> read_flat_config(const std::string& path);
std::map<std::string, std::string> parse_flat_config(const std::string& text);
CampaignConfig config_from_entries(const std::map<std::string, std::string>& kv);

} // namespace gsf
