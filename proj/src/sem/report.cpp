#include "selfsense/sem/report.hpp"

#include <fstream>

#include "selfsense/errors.hpp"

namespace selfsense::sem {

namespace {

const char* block_name(Block b) {
  switch (b) {
    case Block::LambdaY: return "loading";
    case Block::B: return "structural";
    case Block::Gamma: return "exogenous";
    case Block::Phi: return "covariance";
    case Block::Psi: return "disturbance";
    case Block::ThetaEps: return "measurement_error";
  }
  return "";
}

bool is_path(const PathEstimate& p) {
  return p.ref.block == Block::B || p.ref.block == Block::Gamma ||
         p.ref.block == Block::LambdaY;
}

std::pair<std::string, std::string> split_name(const std::string& name) {
  const auto arrow = name.find(" -> ");
  if (arrow == std::string::npos) return {name, ""};
  return {name.substr(0, arrow), name.substr(arrow + 4)};
}

}  // namespace

nlohmann::ordered_json fit_report_json(const FitResult& result) {
  nlohmann::ordered_json j;
  j["n"] = result.n;
  j["chi_square"] = result.chi2;
  j["df"] = result.df;
  j["baseline_chi_square"] = result.chi2_baseline;
  j["baseline_df"] = result.df_baseline;
  j["cfi"] = result.cfi;
  j["tli"] = result.tli;
  j["rmsea"] = result.rmsea;
  j["converged"] = result.converged;
  j["iterations"] = result.iterations;
  j["gradient_norm"] = result.gradient_norm;
  j["se_available"] = result.se_available;

  auto params = nlohmann::ordered_json::array();
  for (const PathEstimate& p : result.paths) {
    nlohmann::ordered_json entry;
    entry["name"] = p.ref.name;
    entry["block"] = block_name(p.ref.block);
    entry["fixed"] = p.fixed;
    entry["estimate"] = p.estimate;
    entry["standardized"] = p.standardized;
    entry["se"] = p.se ? nlohmann::ordered_json(*p.se) : nlohmann::ordered_json(nullptr);
    entry["z"] = p.z ? nlohmann::ordered_json(*p.z) : nlohmann::ordered_json(nullptr);
    entry["p"] =
        p.p_value ? nlohmann::ordered_json(*p.p_value) : nlohmann::ordered_json(nullptr);
    if (p.p_value) entry["significant"] = *p.p_value < 0.05;
    params.push_back(std::move(entry));
  }
  j["parameters"] = std::move(params);
  return j;
}

void write_path_csv(const FitResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "from,to,estimate,standardized,se,z,p,significant,fixed\n";
  out.precision(6);
  out << std::fixed;
  for (const PathEstimate& p : result.paths) {
    if (!is_path(p)) continue;
    const auto [from, to] = split_name(p.ref.name);
    out << from << ',' << to << ',' << p.estimate << ',' << p.standardized << ',';
    if (p.se) out << *p.se;
    out << ',';
    if (p.z) out << *p.z;
    out << ',';
    if (p.p_value) out << *p.p_value;
    out << ',';
    if (p.p_value) out << (*p.p_value < 0.05 ? "yes" : "no");
    out << ',' << (p.fixed ? "yes" : "no") << '\n';
  }
}

void write_fit_report(const FitResult& result, const std::filesystem::path& json_path) {
  std::ofstream out(json_path);
  if (!out) throw IoError("cannot write " + json_path.string());
  out << fit_report_json(result).dump(2) << "\n";
}

}  // namespace selfsense::sem
