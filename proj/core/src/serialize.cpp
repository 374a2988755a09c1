#include "predshare/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace predshare {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

struct CellKey {
  const char* key;
  int s1;
  int s2;
  int t;
};

constexpr CellKey cell_keys[8] = {
    {"Aa1", 1, 1, 1}, {"Aa0", 1, 1, 0}, {"Ab1", 1, 0, 1}, {"Ab0", 1, 0, 0},
    {"Ba1", 0, 1, 1}, {"Ba0", 0, 1, 0}, {"Bb1", 0, 0, 1}, {"Bb0", 0, 0, 0},
};

ordered_json joint_object(const JointSignalDistribution& joint) {
  ordered_json out = ordered_json::object();
  for (const CellKey& cell : cell_keys) {
    out[cell.key] = joint.cell[cell.s1][cell.s2][cell.t];
  }
  return out;
}

JointSignalDistribution joint_from_object(const ordered_json& object) {
  JointSignalDistribution joint;
  for (const CellKey& cell : cell_keys) {
    if (!object.contains(cell.key) || !object[cell.key].is_number()) {
      throw model_error(std::string("joint json: missing cell ") + cell.key);
    }
    joint.cell[cell.s1][cell.s2][cell.t] = object[cell.key].get<double>();
  }
  joint.validate();
  return joint;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (const char ch : text) {
    if (ch == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  parts.push_back(current);
  return parts;
}

std::string trim(const std::string& text) {
  std::size_t lo = 0;
  std::size_t hi = text.size();
  while (lo < hi && (text[lo] == ' ' || text[lo] == '\t' || text[lo] == '\r')) {
    ++lo;
  }
  while (hi > lo &&
         (text[hi - 1] == ' ' || text[hi - 1] == '\t' || text[hi - 1] == '\r')) {
    --hi;
  }
  return text.substr(lo, hi - lo);
}

double parse_double(const std::string& text) {
  const std::string value = trim(text);
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') {
    throw model_error("csv: malformed number '" + value + "'");
  }
  return parsed;
}

ordered_json strategy_object(const PureStrategy& strategy) {
  ordered_json out = ordered_json::object();
  for (const auto& [infoset, action] : strategy) {
    out[infoset] = static_cast<int>(action);
  }
  return out;
}

ordered_json profile_object(const PureStrategyProfile& profile) {
  ordered_json out = ordered_json::object();
  out["firm1"] = strategy_object(profile.s1);
  out["firm2"] = strategy_object(profile.s2);
  return out;
}

ordered_json contract_names(const std::vector<Contract>& contracts) {
  ordered_json out = ordered_json::array();
  for (const Contract contract : contracts) out.push_back(to_string(contract));
  return out;
}

}  // namespace

std::string joint_to_csv(const JointSignalDistribution& joint) {
  std::string out = "X,x,t,prob\n";
  for (const CellKey& cell : cell_keys) {
    out.push_back(cell.key[0]);
    out.push_back(',');
    out.push_back(cell.key[1]);
    out.push_back(',');
    out.push_back(cell.key[2]);
    out.push_back(',');
    out += format_double(joint.cell[cell.s1][cell.s2][cell.t]);
    out.push_back('\n');
  }
  return out;
}

JointSignalDistribution joint_from_csv(const std::string& text) {
  JointSignalDistribution joint;
  bool seen[2][2][2] = {};
  bool header_done = false;
  for (const std::string& raw_line : split(text, '\n')) {
    const std::string line = trim(raw_line);
    if (line.empty() || line[0] == '#') continue;
    if (!header_done) {
      header_done = true;
      if (line == "X,x,t,prob") continue;
      // fall through: headerless data is accepted
    }
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 4) {
      throw model_error("joint csv: expected 4 fields per row");
    }
    const std::string f1 = trim(fields[0]);
    const std::string f2 = trim(fields[1]);
    const std::string ft = trim(fields[2]);
    if ((f1 != "A" && f1 != "B") || (f2 != "a" && f2 != "b") ||
        (ft != "0" && ft != "1")) {
      throw model_error("joint csv: bad signal/label codes in '" + line + "'");
    }
    const int s1 = f1 == "A" ? 1 : 0;
    const int s2 = f2 == "a" ? 1 : 0;
    const int t = ft == "1" ? 1 : 0;
    if (seen[s1][s2][t]) {
      throw model_error("joint csv: duplicate cell " + f1 + f2 + ft);
    }
    seen[s1][s2][t] = true;
    joint.cell[s1][s2][t] = parse_double(fields[3]);
  }
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      for (int t = 0; t < 2; ++t) {
        if (!seen[s1][s2][t]) throw model_error("joint csv: missing cells");
      }
    }
  }
  joint.validate();
  return joint;
}

std::string joint_to_json(const JointSignalDistribution& joint) {
  std::string out = "{\n";
  for (int i = 0; i < 8; ++i) {
    const CellKey& cell = cell_keys[i];
    out += "  \"";
    out += cell.key;
    out += "\": ";
    out += format_double(joint.cell[cell.s1][cell.s2][cell.t]);
    out += i + 1 < 8 ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

JointSignalDistribution joint_from_json(const std::string& text) {
  ordered_json parsed;
  try {
    parsed = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw model_error(std::string("joint json: ") + err.what());
  }
  if (!parsed.is_object()) throw model_error("joint json: expected an object");
  return joint_from_object(parsed);
}

std::string to_json(const BayesianGame& game) {
  ordered_json out;
  const UtilityParams& u = game.utility();
  out["utility"] = {{"reward0", u.reward0},
                    {"reward1", u.reward1},
                    {"cost0", u.cost0},
                    {"cost1", u.cost1}};
  ordered_json atoms = ordered_json::array();
  for (const GameAtom& atom : game.atoms()) {
    ordered_json row;
    row["prob"] = atom.prob;
    row["infoset1"] = atom.infoset1;
    row["infoset2"] = atom.infoset2;
    row["label"] = static_cast<int>(atom.label);
    row["train1"] = atom.train1;
    row["train2"] = atom.train2;
    atoms.push_back(std::move(row));
  }
  out["atoms"] = std::move(atoms);
  out["infosets"] = {{"firm1", game.infosets(Firm::one)},
                     {"firm2", game.infosets(Firm::two)}};
  out["train_components"] = {{"firm1", game.train_components(Firm::one)},
                             {"firm2", game.train_components(Firm::two)}};
  return out.dump(2) + "\n";
}

std::string to_json(const PureStrategyProfile& profile) {
  return profile_object(profile).dump(2) + "\n";
}

std::string to_json(const ContractClassification& result) {
  ordered_json out;
  ordered_json contracts = ordered_json::object();
  for (const Contract contract : all_contracts) {
    const ContractOutcome& outcome =
        result.outcomes[static_cast<std::size_t>(contract)];
    ordered_json entries = ordered_json::array();
    for (std::size_t i = 0; i < outcome.equilibria.size(); ++i) {
      ordered_json entry;
      entry["strategies"] = profile_object(outcome.equilibria[i]);
      const EquilibriumValues& values = outcome.values[i];
      entry["exante"] = {values.exante[0], values.exante[1]};
      ordered_json interim;
      interim["firm1"] = values.interim[0];
      interim["firm2"] = values.interim[1];
      entry["interim"] = std::move(interim);
      entries.push_back(std::move(entry));
    }
    contracts[to_string(contract)] = {{"equilibria", std::move(entries)}};
  }
  out["contracts"] = std::move(contracts);

  ordered_json dominates = ordered_json::object();
  for (const Contract lhs : all_contracts) {
    ordered_json row = ordered_json::object();
    for (const Contract rhs : all_contracts) {
      row[to_string(rhs)] = result.dominates[static_cast<std::size_t>(lhs)]
                                            [static_cast<std::size_t>(rhs)];
    }
    dominates[to_string(lhs)] = std::move(row);
  }
  out["dominates"] = std::move(dominates);
  out["ir"] = contract_names(result.ir_set);
  out["pareto_optimal"] = contract_names(result.pareto_optimal_set);
  out["irpo"] = contract_names(result.irpo_set);
  if (result.uniquely_irpo) {
    out["uniquely_irpo"] = to_string(*result.uniquely_irpo);
  } else {
    out["uniquely_irpo"] = nullptr;
  }
  out["warnings"] = result.warnings;
  return out.dump(2) + "\n";
}

std::string to_json(const FamilyValidationReport& report) {
  ordered_json out;
  out["n_samples"] = report.n_samples;
  out["bins"] = report.bins;
  out["max_joint_deviation"] = report.max_joint_deviation;
  out["joint_ok"] = report.joint_ok();
  out["overall_chi_square"] = report.overall_chi_square;
  out["overall_p_value"] = report.overall_p_value;
  out["uniformity_ok"] = report.uniformity_ok();
  ordered_json per_theta = ordered_json::array();
  for (const ThetaOffsetReport& row : report.per_theta) {
    per_theta.push_back({{"theta", row.theta},
                         {"draws", row.draws},
                         {"chi_square", row.chi_square},
                         {"p_value", row.p_value}});
  }
  out["per_theta"] = std::move(per_theta);
  out["empirical"] = joint_object(report.empirical);
  out["analytic"] = joint_object(report.analytic);
  return out.dump(2) + "\n";
}

std::string to_json(const SweepTable& table) {
  ordered_json out;
  out["seed"] = table.seed;
  out["costs"] = table.costs;
  ordered_json rows = ordered_json::array();
  for (const SweepRow& row : table.rows) {
    rows.push_back({{"cost", row.cost},
                    {"contract", to_string(row.contract)},
                    {"firm", row.firm == Firm::one ? 1 : 2},
                    {"utility", row.utility},
                    {"ir", row.ir},
                    {"optimal", row.optimal}});
  }
  out["rows"] = std::move(rows);
  return out.dump(2) + "\n";
}

std::string to_json(const TotalSharingTable& table) {
  ordered_json out;
  out["seed"] = table.seed;
  ordered_json rows = ordered_json::array();
  for (const TotalSharingRow& row : table.rows) {
    rows.push_back({{"cost", row.cost}, {"utility", row.utility}});
  }
  out["rows"] = std::move(rows);
  return out.dump(2) + "\n";
}

std::string to_json(const BatteryResult& battery) {
  ordered_json out;
  ordered_json cells = ordered_json::array();
  for (const BatteryCell& cell : battery.cells) {
    ordered_json frequency = ordered_json::object();
    for (const Contract contract : all_contracts) {
      frequency[to_string(contract)] =
          cell.frequency[static_cast<std::size_t>(contract)];
    }
    cells.push_back({{"epsilon", cell.epsilon},
                     {"seed", cell.seed},
                     {"frequency", std::move(frequency)},
                     {"signal_agreement", cell.signal_agreement}});
  }
  out["cells"] = std::move(cells);
  return out.dump(2) + "\n";
}

std::string sweep_to_csv(const SweepTable& table) {
  std::string out = "# seed=" + std::to_string(table.seed) + "\n";
  out += "cost,contract,firm,utility,ir,optimal\n";
  for (const SweepRow& row : table.rows) {
    out += format_double(row.cost);
    out.push_back(',');
    out += to_string(row.contract);
    out.push_back(',');
    out += row.firm == Firm::one ? "1" : "2";
    out.push_back(',');
    out += format_double(row.utility);
    out.push_back(',');
    out += row.ir ? "1" : "0";
    out.push_back(',');
    out += row.optimal ? "1" : "0";
    out.push_back('\n');
  }
  return out;
}

std::string total_sharing_to_csv(const TotalSharingTable& table) {
  std::string out = "# seed=" + std::to_string(table.seed) + "\n";
  out += "cost,utility\n";
  for (const TotalSharingRow& row : table.rows) {
    out += format_double(row.cost);
    out.push_back(',');
    out += format_double(row.utility);
    out.push_back('\n');
  }
  return out;
}

}  // namespace predshare
