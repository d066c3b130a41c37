#include "eclimb/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace eclimb {

using nlohmann::json;

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value == 0.0 ? 0.0 : value);  // no "-0"
    return buf;
}

double round_sig6(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

std::string format_mmss(double seconds) {
    const long total = std::lround(seconds);
    const long mag = std::labs(total);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%ld:%02ld", total < 0 ? "-" : "", mag / 60, mag % 60);
    return buf;
}

std::string ci_max_mode_name(CiMaxSpec::Mode mode) {
    switch (mode) {
        case CiMaxSpec::Mode::Vmax:
            return "vmax";
        case CiMaxSpec::Mode::Calibrated:
            return "calibrated";
        case CiMaxSpec::Mode::Explicit:
            break;
    }
    return "explicit";
}

namespace {

std::string tau_text(const TimeConstant& tau) { return tau.is_infinite() ? "inf" : format_number(tau.value()); }

json tau_json(const TimeConstant& tau) {
    return tau.is_infinite() ? json("inf") : json(round_sig6(tau.value()));
}

}  // namespace

std::string render_plan_text(const ScenarioResult& r) {
    const ScenarioSummary& s = r.summary;
    std::ostringstream out;
    out << "ci_max " << format_number(s.ci_max) << " C/s (mode " << ci_max_mode_name(s.ci_max_mode) << ")\n";
    out << "ci0 " << format_number(s.ci0) << " C/s, tau " << tau_text(s.tau) << " s\n";
    out << "fms plan: v0* " << format_number(r.baseline.v_star * 3.6) << " km/h ("
        << format_number(r.baseline.v_star) << " m/s), t_c0* " << format_number(r.baseline.t_c_star) << " s ("
        << format_mmss(r.baseline.t_c_star) << ")\n";
    for (std::size_t k = 0; k < r.segments.size(); ++k) {
        const FlownSegment& seg = r.segments[k];
        out << "segment " << k << ": start " << format_number(seg.t_start) << " s ("
            << format_mmss(seg.t_start) << ") at (" << format_number(seg.segment.start.x / 1000.0) << ", "
            << format_number(seg.segment.start.h / 1000.0) << ") km\n";
        out << "  v* " << format_number(seg.plan.v_star * 3.6) << " km/h (" << format_number(seg.plan.v_star)
            << " m/s)" << (seg.plan.at_speed_limit ? " [v_max]" : "") << "\n";
        out << "  t_c* " << format_number(seg.plan.t_c_star) << " s, ends " << format_number(seg.t_end) << " s ("
            << format_mmss(seg.t_end) << ")\n";
        out << "  J* " << format_number(seg.plan.j_star) << " C, Q_f " << format_number(seg.plan.q_f)
            << " C, charge used " << format_number(seg.charge_used) << " C\n";
    }
    out << "total climb time " << format_number(s.total_time) << " s (" << format_mmss(s.total_time) << ")\n";
    out << "time delta vs fms plan " << format_number(s.time_delta) << " s (" << format_mmss(s.time_delta)
        << ")\n";
    out << "charge used " << format_number(s.charge_used_integrated) << " C (closed form "
        << format_number(s.charge_used) << " C)\n";
    out << "energy used " << format_number(s.energy_used) << " J, final energy " << format_number(s.final_energy)
        << " J\n";
    if (s.depleted) out << "warning: battery depleted before the end of the climb\n";
    if (!s.altitude_reached) out << "warning: mean climb rate does not reach cruise altitude\n";
    if (s.ignored_events > 0) out << "note: " << s.ignored_events << " event(s) after the end of the climb ignored\n";
    return out.str();
}

json plan_record(const ScenarioResult& r) {
    const ScenarioSummary& s = r.summary;
    json j;
    j["ci_max_cs"] = round_sig6(s.ci_max);
    j["ci_max_mode"] = ci_max_mode_name(s.ci_max_mode);
    j["ci0_cs"] = round_sig6(s.ci0);
    j["tau_s"] = tau_json(s.tau);
    j["fms"] = {{"v_star_kmh", round_sig6(r.baseline.v_star * 3.6)},
                {"v_star_ms", round_sig6(r.baseline.v_star)},
                {"t_c_star_s", round_sig6(r.baseline.t_c_star)}};
    j["segments"] = json::array();
    for (const FlownSegment& seg : r.segments) {
        j["segments"].push_back({{"start_km", {round_sig6(seg.segment.start.x / 1000.0),
                                               round_sig6(seg.segment.start.h / 1000.0)}},
                                 {"t_start_s", round_sig6(seg.t_start)},
                                 {"t_end_s", round_sig6(seg.t_end)},
                                 {"ci_start_cs", round_sig6(seg.ci.ci_start)},
                                 {"ci_in_cs", round_sig6(seg.ci.ci_in)},
                                 {"v_star_kmh", round_sig6(seg.plan.v_star * 3.6)},
                                 {"v_star_ms", round_sig6(seg.plan.v_star)},
                                 {"t_c_star_s", round_sig6(seg.plan.t_c_star)},
                                 {"j_star_c", round_sig6(seg.plan.j_star)},
                                 {"q_f_c", round_sig6(seg.plan.q_f)},
                                 {"curvature", round_sig6(seg.plan.curvature)},
                                 {"sufficient_ok", seg.plan.sufficient_ok},
                                 {"at_speed_limit", seg.plan.at_speed_limit},
                                 {"charge_used_c", round_sig6(seg.charge_used)}});
    }
    j["total_time_s"] = round_sig6(s.total_time);
    j["time_delta_s"] = round_sig6(s.time_delta);
    j["charge_used_c"] = round_sig6(s.charge_used_integrated);
    j["charge_used_closed_form_c"] = round_sig6(s.charge_used);
    j["final_charge_c"] = round_sig6(s.final_charge);
    j["final_energy_j"] = round_sig6(s.final_energy);
    j["energy_used_j"] = round_sig6(s.energy_used);
    j["depleted"] = s.depleted;
    j["altitude_reached"] = s.altitude_reached;
    j["ignored_events"] = s.ignored_events;
    return j;
}

void write_profile_csv(std::ostream& out, const ScenarioResult& r) {
    const bool track = !r.samples.empty() && r.samples.front().v_track.has_value();
    out << "t_s,x_m,h_m,v_ms,ci_Cs,q_C,e_J" << (track ? ",v_track_ms" : "") << '\n';
    for (const ProfileSample& s : r.samples) {
        out << format_number(s.t) << ',' << format_number(s.x) << ',' << format_number(s.h) << ','
            << format_number(s.v) << ',' << format_number(s.ci) << ',' << format_number(s.q) << ','
            << format_number(s.e);
        if (track) out << ',' << format_number(*s.v_track);
        out << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
    out << "v_kmh,v_ms,tau_s,curve,J_C,argmin\n";
    for (const SweepCurve& curve : table.curves) {
        const char* label = curve.constant_ci ? "constant_ci" : "variable_ci";
        for (std::size_t i = 0; i < table.v.size(); ++i) {
            out << format_number(table.v[i] * 3.6) << ',' << format_number(table.v[i]) << ','
                << tau_text(curve.tau) << ',' << label << ',' << format_number(curve.cost[i]) << ','
                << (i == curve.argmin ? 1 : 0) << '\n';
        }
    }
}

}  // namespace eclimb
