#include "lossbound/serialize.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lossbound {

using nlohmann::json;

namespace {

json require(const json& j, const char* field) {
    if (!j.contains(field))
        throw std::runtime_error(std::string("missing field '") + field + "'");
    return j.at(field);
}

std::vector<double> number_row(const json& j, const char* field) {
    if (!j.is_array()) throw std::runtime_error(std::string("field '") + field + "' must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number())
            throw std::runtime_error(std::string("field '") + field + "' must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::string format_full(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ExactHolds: return "exact-holds";
        case Verdict::ExactFailsBy: return "exact-fails-by";
        case Verdict::NotChecked: return "not-checked";
    }
    return "?";
}

}  // namespace

FiniteISDM parse_instance_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("instance JSON parse error: ") + e.what());
    }
    FiniteISDM instance;
    try {
        instance.prior = FiniteDistribution(number_row(require(j, "prior"), "prior"));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("field 'prior': ") + e.what());
    }
    for (const auto& row : require(j, "obs_laws")) {
        try {
            instance.obs_laws.emplace_back(number_row(row, "obs_laws"));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("field 'obs_laws': ") + e.what());
        }
    }
    for (const auto& row : require(j, "loss")) instance.loss.push_back(number_row(row, "loss"));
    const json lmax = require(j, "l_max");
    if (!lmax.is_number()) throw std::runtime_error("field 'l_max' must be a number");
    instance.l_max = lmax.get<double>();
    if (j.contains("labels")) {
        const auto& labels = j.at("labels");
        if (labels.contains("models"))
            instance.model_labels = labels.at("models").get<std::vector<std::string>>();
        if (labels.contains("outcomes"))
            instance.outcome_labels = labels.at("outcomes").get<std::vector<std::string>>();
    }
    return instance;
}

FiniteISDM load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance_json(buf.str());
}

std::string instance_to_json(const FiniteISDM& instance) {
    json j;
    j["prior"] = instance.prior.probs();
    for (const auto& row : instance.obs_laws) j["obs_laws"].push_back(row.probs());
    j["loss"] = instance.loss;
    j["l_max"] = instance.l_max;
    if (!instance.model_labels.empty()) j["labels"]["models"] = instance.model_labels;
    if (!instance.outcome_labels.empty()) j["labels"]["outcomes"] = instance.outcome_labels;
    return j.dump(2);
}

BanditInstanceSpec parse_bandit_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("bandit JSON parse error: ") + e.what());
    }
    BanditInstanceSpec spec;
    spec.arms = require(j, "arms").get<std::size_t>();
    spec.horizon = require(j, "horizon").get<std::size_t>();
    for (const auto& row : require(j, "reward_values"))
        spec.reward_values.push_back(number_row(row, "reward_values"));
    for (const auto& per_model : require(j, "reward_probs")) {
        std::vector<std::vector<double>> rows;
        for (const auto& row : per_model) rows.push_back(number_row(row, "reward_probs"));
        spec.reward_probs.push_back(std::move(rows));
    }
    try {
        spec.prior = FiniteDistribution(number_row(require(j, "prior"), "prior"));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("field 'prior': ") + e.what());
    }
    const json policy = require(j, "policy");
    const std::string kind = require(policy, "kind").get<std::string>();
    if (kind == "uniform") {
        spec.policy.kind = BanditPolicy::Kind::Uniform;
    } else if (kind == "fixed") {
        spec.policy.kind = BanditPolicy::Kind::Fixed;
        spec.policy.fixed_arm = require(policy, "arm").get<std::size_t>();
    } else if (kind == "table") {
        spec.policy.kind = BanditPolicy::Kind::Table;
        for (const auto& [key, row] : require(policy, "entries").items())
            spec.policy.table[key] = number_row(row, "policy.entries");
    } else {
        throw std::runtime_error("field 'policy.kind' must be uniform, fixed, or table");
    }
    if (j.contains("loss_kind") && j.at("loss_kind").get<std::string>() != "cumulative_regret")
        throw std::runtime_error("field 'loss_kind' must be 'cumulative_regret'");
    if (j.contains("transcript_cap")) spec.transcript_cap = j.at("transcript_cap").get<std::uint64_t>();
    return spec;
}

BanditInstanceSpec load_bandit_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open bandit spec file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_bandit_json(buf.str());
}

std::string report_to_json(const BoundReport& report) {
    json j;
    j["theorem"] = to_string(report.theorem);
    j["divergence"] = report.divergence;
    j["reference"] = report.reference;
    j["budget"] = report.budget;
    for (const auto& [name, value] : report.quantities) j["quantities"][name] = value;
    j["tolerance"] = report.tolerance;
    if (report.t_refine > 0) j["t_refine"] = report.t_refine;
    j["vacuous"] = report.vacuous;
    j["verified"] = verdict_name(report.verdict);
    if (report.verdict == Verdict::ExactFailsBy) j["verified_gap"] = report.verdict_gap;
    return j.dump(2);
}

std::string report_to_csv(const BoundReport& report) {
    std::ostringstream head, row;
    head << "theorem,divergence,reference,budget";
    row << to_string(report.theorem) << ',' << report.divergence << ',' << report.reference << ','
        << format_full(report.budget);
    for (const auto& [name, value] : report.quantities) {
        head << ',' << name;
        row << ',' << format_full(value);
    }
    head << ",tolerance,vacuous,verified";
    row << ',' << format_full(report.tolerance) << ',' << (report.vacuous ? 1 : 0) << ','
        << verdict_name(report.verdict);
    return head.str() + "\n" + row.str() + "\n";
}

std::string report_to_table(const BoundReport& report) {
    std::ostringstream out;
    out << std::setprecision(6);
    out << "theorem    " << to_string(report.theorem) << "\n"
        << "divergence " << report.divergence << "\n"
        << "reference  " << report.reference << "\n"
        << "budget     " << report.budget << "\n";
    for (const auto& [name, value] : report.quantities)
        out << name << std::string(name.size() < 11 ? 11 - name.size() : 1, ' ') << value << "\n";
    out << "vacuous    " << (report.vacuous ? "yes" : "no") << "\n"
        << "verified   " << verdict_name(report.verdict);
    if (report.verdict == Verdict::ExactFailsBy) out << " (gap " << report.verdict_gap << ")";
    out << "\n";
    return out.str();
}

}  // namespace lossbound
