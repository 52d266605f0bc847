// Python surface for the factorization library. Enum-like choices cross the
// boundary as strings, reports come back as structured objects, and matrices
// as nested lists, so the module needs nothing beyond the stdlib.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsf/campaign.hpp"
#include "gsf/decoherence.hpp"
#include "gsf/filter.hpp"
#include "gsf/gauss.hpp"
#include "gsf/qubit.hpp"
#include "gsf/residue.hpp"

#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace gsf;

namespace {

std::vector<std::vector<std::complex<double>>> mat_to_list(const Mat3c& m) {
    std::vector<std::vector<std::complex<double>>> out(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i].push_back(m(i, j));
    return out;
}

DecoherenceParams make_dec(double t1, double t2, double delta_omega) {
    DecoherenceParams d;
    d.t1 = t1;
    d.t2 = t2;
    d.delta_omega = delta_omega;
    d.validate();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gauss sum factorization on a simulated driven qubit";

    py::class_<ReducedResidue>(m, "ReducedResidue")
        .def(py::init([](uint64_t p, uint64_t q) {
                 return ReducedResidue{p, q};
             }),
             py::arg("p"), py::arg("q"))
        .def_readonly("p", &ReducedResidue::p)
        .def_readonly("q", &ReducedResidue::q)
        .def("is_factor", &ReducedResidue::is_factor)
        .def("__eq__", [](const ReducedResidue& a, const ReducedResidue& b) {
            return a == b;
        })
        .def("__repr__", [](const ReducedResidue& r) {
            std::ostringstream s;
            s << "ReducedResidue(p=" << r.p << ", q=" << r.q << ")";
            return s.str();
        });

    py::class_<PreprocessRecord>(m, "PreprocessRecord")
        .def_readonly("n2", &PreprocessRecord::n2)
        .def_readonly("n5", &PreprocessRecord::n5)
        .def_readonly("n9", &PreprocessRecord::n9)
        .def_readonly("reduced_n", &PreprocessRecord::reduced_n)
        .def("reconstruct", &PreprocessRecord::reconstruct)
        .def("__repr__", [](const PreprocessRecord& r) {
            std::ostringstream s;
            s << "PreprocessRecord(n2=" << r.n2 << ", n5=" << r.n5;
            if (r.n9) s << ", n9=" << *r.n9;
            s << ", reduced_n=" << r.reduced_n << ")";
            return s.str();
        });

    py::class_<PulseSchedule>(m, "PulseSchedule")
        .def(py::init(&PulseSchedule::make), py::arg("tau"), py::arg("t_pi"),
             py::arg("m_max"))
        .def_readonly("tau", &PulseSchedule::tau)
        .def_readonly("t_pi", &PulseSchedule::t_pi)
        .def_readonly("m_max", &PulseSchedule::m_max)
        .def_readonly("omega_rabi", &PulseSchedule::omega_rabi)
        .def("interval", &PulseSchedule::interval);

    py::class_<DecoherenceParams>(m, "DecoherenceParams")
        .def(py::init(&make_dec),
             py::arg("t1") = std::numeric_limits<double>::infinity(),
             py::arg("t2") = std::numeric_limits<double>::infinity(),
             py::arg("delta_omega") = 0.0)
        .def_readonly("t1", &DecoherenceParams::t1)
        .def_readonly("t2", &DecoherenceParams::t2)
        .def_readonly("delta_omega", &DecoherenceParams::delta_omega);

    // integer layer
    m.def("reduce_residue", &reduce_residue, py::arg("n"), py::arg("l"));
    m.def(
        "preprocess",
        [](uint64_t n, bool extended) { return preprocess(n, extended); },
        py::arg("n"), py::arg("extended") = false);
    m.def(
        "trial_factors",
        [](uint64_t reduced_n, uint64_t l_max, const std::string& level) {
            return trial_factors(reduced_n, l_max,
                                 preprocess_level_from_string(level));
        },
        py::arg("reduced_n"), py::arg("l_max"), py::arg("level") = "none");
    m.def("type_i_pulse_floor", &type_i_pulse_floor, py::arg("n"));
    m.def(
        "classify",
        [](uint64_t n, uint64_t l, uint64_t m_lower, double epsilon) {
            return to_string(classify(n, l, m_lower, epsilon));
        },
        py::arg("n"), py::arg("l"), py::arg("m_lower"), py::arg("epsilon") = 0.1);

    // bare interference signal
    m.def(
        "gauss_sum",
        [](uint64_t m_max, const ReducedResidue& r) {
            return gauss_sum(m_max, r).value;
        },
        py::arg("m_max"), py::arg("residue"));
    m.def("quadratic_gauss_plateau", &quadratic_gauss_plateau, py::arg("q"));
    m.def("ideal_signal", &ideal_signal, py::arg("m_max"), py::arg("n"),
          py::arg("l"));

    // driven qubit
    m.def("gauss_phases", &gauss_phases, py::arg("n"), py::arg("l"),
          py::arg("m_max"));
    m.def("residue_phases", &residue_phases, py::arg("p"), py::arg("q"),
          py::arg("m_max"));
    m.def(
        "evolve_sequence",
        [](const PulseSchedule& s, const std::vector<double>& phases,
           const DecoherenceParams& dec, bool detuned) {
            return evolve_sequence(s, phases, dec,
                                   detuned ? PulseModel::Detuned
                                           : PulseModel::Ideal);
        },
        py::arg("schedule"), py::arg("phases"),
        py::arg("dec") = DecoherenceParams{}, py::arg("detuned") = false);
    m.def(
        "evolve_profile",
        [](const PulseSchedule& s, const std::vector<double>& phases,
           const DecoherenceParams& dec, bool detuned) {
            return evolve_profile(s, phases, dec,
                                  detuned ? PulseModel::Detuned
                                          : PulseModel::Ideal);
        },
        py::arg("schedule"), py::arg("phases"),
        py::arg("dec") = DecoherenceParams{}, py::arg("detuned") = false);
    m.def(
        "monte_carlo_profile",
        [](const PulseSchedule& s, const std::vector<double>& phases,
           double delta_max, uint64_t shots, uint64_t seed,
           const DecoherenceParams& dec) {
            std::vector<std::pair<double, double>> out;
            for (const auto& r :
                 monte_carlo_profile(s, phases, delta_max, shots, seed, dec))
                out.emplace_back(r.mean, r.std_err);
            return out;
        },
        py::arg("schedule"), py::arg("phases"), py::arg("delta_max"),
        py::arg("shots"), py::arg("seed"),
        py::arg("dec") = DecoherenceParams{});

    // decay closed forms and figures of merit
    m.def("noisy_summand", &noisy_summand, py::arg("m"), py::arg("residue"),
          py::arg("gamma2_tau0"));
    m.def("noisy_gauss_sum", &noisy_gauss_sum, py::arg("m_max"),
          py::arg("residue"), py::arg("gamma2_tau0"));
    m.def("noisy_gauss_factor_closed", &noisy_gauss_factor_closed,
          py::arg("m_max"), py::arg("gamma2_tau0"));
    m.def("noisy_gauss_worst_closed", &noisy_gauss_worst_closed,
          py::arg("m_max"), py::arg("gamma2_tau0"));
    m.def("cutoff", &cutoff, py::arg("m_max"), py::arg("gamma2_tau0_factor"),
          py::arg("gamma2_tau0_worst"), py::arg("literal_form") = false);
    m.def("discernability_closed", &discernability_closed, py::arg("m_max"),
          py::arg("gamma2_tau0"));
    m.def("discernability_exact", &discernability_exact, py::arg("m_max"),
          py::arg("gamma2_tau0"));
    m.def("discernability_empirical", &discernability_empirical,
          py::arg("signal_factor"), py::arg("signal_worst"));
    m.def("adjusted_discernability", &adjusted_discernability, py::arg("m_max"),
          py::arg("t2_factor"), py::arg("t2_worst"), py::arg("tau0"));
    m.def(
        "contrast",
        [](const std::map<uint64_t, double>& signals,
           const std::set<uint64_t>& factor_set) {
            auto c = contrast(signals, factor_set);
            return std::make_pair(c.v_value, c.a_mean);
        },
        py::arg("signals"), py::arg("factor_set"));
    m.def("lambert_w0", &lambert_w0, py::arg("x"));
    m.def("max_pulse_count", &max_pulse_count, py::arg("d_target"),
          py::arg("t2"), py::arg("tau0"));
    m.def(
        "largest_factorizable",
        [](uint64_t m) {
            auto b = largest_factorizable(m);
            return std::make_pair(b.n_bound, b.log10_bound);
        },
        py::arg("m"));

    // spectral filtering
    py::class_<SpectralDensity>(m, "SpectralDensity")
        .def_static("white", &SpectralDensity::white, py::arg("sigma"),
                    py::arg("omega_min") = SpectralDensity::default_omega_min,
                    py::arg("omega_max") = SpectralDensity::default_omega_max)
        .def_static("one_over_f", &SpectralDensity::one_over_f, py::arg("sigma"),
                    py::arg("omega_min") = SpectralDensity::default_omega_min,
                    py::arg("omega_max") = SpectralDensity::default_omega_max)
        .def_static("tabulated", &SpectralDensity::tabulated, py::arg("table"))
        .def_readonly("omega_min", &SpectralDensity::omega_min)
        .def_readonly("omega_max", &SpectralDensity::omega_max)
        .def_readonly("sigma", &SpectralDensity::sigma)
        .def("value", &SpectralDensity::value, py::arg("omega"));
    m.def(
        "r_omega",
        [](double omega, uint64_t m, const PulseSchedule& s,
           const std::vector<double>& phases) {
            return mat_to_list(r_omega_general(omega, m, s, phases));
        },
        py::arg("omega"), py::arg("m"), py::arg("schedule"), py::arg("phases"));
    m.def(
        "filter_matrix",
        [](double omega, uint64_t m, const PulseSchedule& s,
           const std::vector<double>& phases) {
            return mat_to_list(filter_matrix(omega, m, s, phases));
        },
        py::arg("omega"), py::arg("m"), py::arg("schedule"), py::arg("phases"));
    m.def("coherence_integral", &coherence_integral, py::arg("m"),
          py::arg("schedule"), py::arg("phases"), py::arg("noise"));
    m.def(
        "decay_envelope",
        [](uint64_t m_max, const PulseSchedule& s,
           const std::vector<double>& phases, const SpectralDensity& noise) {
            auto env = decay_envelope(m_max, s, phases, noise);
            return std::make_pair(env.chi, env.envelope);
        },
        py::arg("m_max"), py::arg("schedule"), py::arg("phases"),
        py::arg("noise"));

    // campaign
    py::class_<CampaignConfig>(m, "CampaignConfig")
        .def(py::init([](uint64_t n, uint64_t l_max, uint64_t pulses, double tau,
                         double tpi, double t2, std::optional<double> t2_worst,
                         const std::string& preprocess, double sigma,
                         double detune_max, uint64_t shots, uint64_t seed) {
                 CampaignConfig c;
                 c.n = n;
                 c.l_max = l_max;
                 c.m_max = pulses;
                 c.schedule = PulseSchedule::make(tau, tpi, pulses);
                 c.dec.t2 = t2;
                 c.t2_worst = t2_worst;
                 c.preprocess = preprocess_level_from_string(preprocess);
                 c.measurement_sigma = sigma;
                 c.detune_max = detune_max;
                 c.shots = shots;
                 c.seed = seed;
                 c.validate();
                 return c;
             }),
             py::arg("n"), py::arg("l_max"), py::arg("pulses"), py::arg("tau"),
             py::arg("tpi"),
             py::arg("t2") = std::numeric_limits<double>::infinity(),
             py::arg("t2_worst") = std::nullopt,
             py::arg("preprocess") = "none", py::arg("sigma") = 0.04,
             py::arg("detune_max") = 0.0, py::arg("shots") = 1,
             py::arg("seed") = 1)
        .def_readonly("n", &CampaignConfig::n)
        .def_readonly("l_max", &CampaignConfig::l_max)
        .def_readonly("m_max", &CampaignConfig::m_max)
        .def_readonly("seed", &CampaignConfig::seed);

    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("l", &TrialRecord::l)
        .def_readonly("residue", &TrialRecord::residue)
        .def_property_readonly(
            "cls", [](const TrialRecord& t) { return to_string(t.cls); })
        .def_readonly("ideal_signal", &TrialRecord::ideal_signal)
        .def_readonly("signal", &TrialRecord::signal)
        .def_readonly("std_err", &TrialRecord::std_err)
        .def_readonly("above_cutoff", &TrialRecord::above_cutoff)
        .def_readonly("at_cutoff", &TrialRecord::at_cutoff)
        .def("__repr__", [](const TrialRecord& t) {
            std::ostringstream s;
            s << "TrialRecord(l=" << t.l << ", signal=" << t.signal << ")";
            return s.str();
        });

    py::class_<DiscernabilitySummary>(m, "DiscernabilitySummary")
        .def_readonly("predicted", &DiscernabilitySummary::predicted)
        .def_readonly("adjusted", &DiscernabilitySummary::adjusted)
        .def_readonly("empirical", &DiscernabilitySummary::empirical);

    py::class_<FactorizationReport>(m, "FactorizationReport")
        .def_readonly("pre", &FactorizationReport::pre)
        .def_readonly("trials", &FactorizationReport::trials)
        .def_readonly("worst_q", &FactorizationReport::worst_q)
        .def_readonly("cutoff", &FactorizationReport::cutoff)
        .def_readonly("identified_factors",
                      &FactorizationReport::identified_factors)
        .def_readonly("ties", &FactorizationReport::ties)
        .def_readonly("discernability", &FactorizationReport::discernability)
        .def_property_readonly(
            "contrast",
            [](const FactorizationReport& r)
                -> std::optional<std::pair<double, double>> {
                if (!r.contrast) return std::nullopt;
                return std::make_pair(r.contrast->v_value, r.contrast->a_mean);
            })
        .def_readonly("warnings", &FactorizationReport::warnings)
        .def("to_json", &report_to_json)
        .def("to_csv", &report_to_csv);

    m.def("run_campaign", &run_campaign, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "identify",
        [](const std::map<uint64_t, double>& signals, double cutoff_value) {
            auto r = identify(signals, cutoff_value);
            return std::make_pair(r.factors, r.ties);
        },
        py::arg("signals"), py::arg("cutoff"));
    m.def("report_from_json", &report_from_json, py::arg("text"));

    m.attr("default_omega_min") = SpectralDensity::default_omega_min;
    m.attr("default_omega_max") = SpectralDensity::default_omega_max;
}
