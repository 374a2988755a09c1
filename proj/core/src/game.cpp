#include "predshare/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <set>
#include <utility>

namespace predshare {

namespace {

constexpr std::size_t max_cell_infosets = 16;
constexpr std::size_t max_profiles = std::size_t{1} << 20;

const std::string& atom_infoset(const GameAtom& atom, Firm firm) {
  return firm == Firm::one ? atom.infoset1 : atom.infoset2;
}

const std::string& atom_train(const GameAtom& atom, Firm firm) {
  return firm == Firm::one ? atom.train1 : atom.train2;
}

Action action_at(const PureStrategy& strategy, const std::string& infoset) {
  const auto it = strategy.find(infoset);
  if (it == strategy.end()) {
    throw model_error("strategy does not cover infoset " + infoset);
  }
  return it->second;
}

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

BayesianGame::BayesianGame(std::vector<GameAtom> atoms, UtilityParams utility)
    : utility_(utility) {
  double total = 0.0;
  atoms_.reserve(atoms.size());
  for (GameAtom& atom : atoms) {
    if (atom.prob < 0.0) {
      throw model_error("game atom with negative probability");
    }
    if (atom.prob == 0.0) continue;
    total += atom.prob;
    atoms_.push_back(std::move(atom));
  }
  if (atoms_.empty() || std::fabs(total - 1.0) > mass_tolerance) {
    throw model_error("game atom probabilities do not sum to 1");
  }
  for (int f = 0; f < 2; ++f) {
    const Firm firm = f == 0 ? Firm::one : Firm::two;
    std::map<std::string, std::string> train_of;
    std::set<std::string> trains;
    for (const GameAtom& atom : atoms_) {
      const std::string& info = atom_infoset(atom, firm);
      const std::string& train = atom_train(atom, firm);
      const auto [it, inserted] = train_of.emplace(info, train);
      if (!inserted && it->second != train) {
        throw model_error("infoset " + info +
                          " spans two training components");
      }
      trains.insert(train);
    }
    infosets_[f].reserve(train_of.size());
    for (const auto& [info, train] : train_of) infosets_[f].push_back(info);
    train_components_[f].assign(trains.begin(), trains.end());
  }
}

const std::vector<std::string>& BayesianGame::infosets(Firm firm) const {
  return infosets_[static_cast<int>(firm)];
}

const std::vector<std::string>& BayesianGame::train_components(
    Firm firm) const {
  return train_components_[static_cast<int>(firm)];
}

double conditional_utility(const BayesianGame& game, Firm firm,
                           const std::string& infoset, Action action,
                           const PureStrategy& opp_strategy) {
  const Firm opp = other_firm(firm);
  double mass = 0.0;
  double value = 0.0;
  for (const GameAtom& atom : game.atoms()) {
    if (atom_infoset(atom, firm) != infoset) continue;
    const Action opp_action = action_at(opp_strategy, atom_infoset(atom, opp));
    mass += atom.prob;
    value += atom.prob *
             expost_utility(game.utility(), action, atom.label, opp_action);
  }
  if (mass <= 0.0) {
    throw model_error("conditional utility undefined at infoset " + infoset);
  }
  return value / mass;
}

std::vector<PureStrategy> best_responses(const BayesianGame& game, Firm firm,
                                         const PureStrategy& opp_strategy,
                                         double tolerance) {
  const std::vector<std::string>& infosets = game.infosets(firm);
  std::vector<std::vector<Action>> choices;
  choices.reserve(infosets.size());
  std::size_t combos = 1;
  for (const std::string& info : infosets) {
    const double u0 =
        conditional_utility(game, firm, info, Action::zero, opp_strategy);
    const double u1 =
        conditional_utility(game, firm, info, Action::one, opp_strategy);
    std::vector<Action> best;
    if (u0 >= u1 - tolerance) best.push_back(Action::zero);
    if (u1 >= u0 - tolerance) best.push_back(Action::one);
    combos *= best.size();
    if (combos > max_profiles) {
      throw capacity_error("best-response product too large");
    }
    choices.push_back(std::move(best));
  }
  std::vector<PureStrategy> out;
  out.reserve(combos);
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    PureStrategy strategy;
    for (std::size_t i = 0; i < infosets.size(); ++i) {
      strategy.emplace(infosets[i], choices[i][pick[i]]);
    }
    out.push_back(std::move(strategy));
    std::size_t i = choices.size();
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (choices.empty()) return out;
  }
}

namespace {

// A common-knowledge cell: the infosets of both firms linked (transitively)
// by shared atoms, plus those atoms.
struct Cell {
  std::vector<std::string> infosets1;
  std::vector<std::string> infosets2;
  std::vector<const GameAtom*> atoms;
};

struct CellAtom {
  double prob;
  int drive_info;
  int reply_info;
  Label label;
};

// Pure strategies restricted to one cell, as action vectors parallel to the
// cell's sorted infoset lists.
struct CellProfile {
  std::vector<Action> s1;
  std::vector<Action> s2;
};

std::vector<Cell> split_cells(const BayesianGame& game) {
  const auto& inf1 = game.infosets(Firm::one);
  const auto& inf2 = game.infosets(Firm::two);
  std::map<std::string, int> index1;
  std::map<std::string, int> index2;
  for (std::size_t i = 0; i < inf1.size(); ++i) index1[inf1[i]] = int(i);
  for (std::size_t i = 0; i < inf2.size(); ++i) {
    index2[inf2[i]] = int(i + inf1.size());
  }
  UnionFind uf(inf1.size() + inf2.size());
  for (const GameAtom& atom : game.atoms()) {
    uf.merge(index1.at(atom.infoset1), index2.at(atom.infoset2));
  }
  std::map<int, Cell> by_root;
  for (std::size_t i = 0; i < inf1.size(); ++i) {
    by_root[uf.find(int(i))].infosets1.push_back(inf1[i]);
  }
  for (std::size_t i = 0; i < inf2.size(); ++i) {
    by_root[uf.find(int(i + inf1.size()))].infosets2.push_back(inf2[i]);
  }
  for (const GameAtom& atom : game.atoms()) {
    by_root[uf.find(index1.at(atom.infoset1))].atoms.push_back(&atom);
  }
  std::vector<Cell> cells;
  cells.reserve(by_root.size());
  for (auto& [root, cell] : by_root) cells.push_back(std::move(cell));
  return cells;
}

// All equilibria of one cell: enumerate the strategies of the firm with
// fewer infosets, build the other firm's per-infoset best-response sets, and
// keep the combinations the driving firm is itself stable against.
std::vector<CellProfile> cell_equilibria(const Cell& cell,
                                         const UtilityParams& utility,
                                         double tolerance) {
  if (cell.infosets1.size() > max_cell_infosets ||
      cell.infosets2.size() > max_cell_infosets) {
    throw capacity_error("common-knowledge cell exceeds 16 infosets");
  }
  const bool drive1 = cell.infosets1.size() <= cell.infosets2.size();
  const auto& drive_infosets = drive1 ? cell.infosets1 : cell.infosets2;
  const auto& reply_infosets = drive1 ? cell.infosets2 : cell.infosets1;

  std::map<std::string, int> drive_index;
  std::map<std::string, int> reply_index;
  for (std::size_t i = 0; i < drive_infosets.size(); ++i) {
    drive_index[drive_infosets[i]] = int(i);
  }
  for (std::size_t i = 0; i < reply_infosets.size(); ++i) {
    reply_index[reply_infosets[i]] = int(i);
  }
  std::vector<CellAtom> atoms;
  atoms.reserve(cell.atoms.size());
  for (const GameAtom* atom : cell.atoms) {
    atoms.push_back(CellAtom{
        atom->prob, drive_index.at(drive1 ? atom->infoset1 : atom->infoset2),
        reply_index.at(drive1 ? atom->infoset2 : atom->infoset1),
        atom->label});
  }
  // Infoset masses, accumulated in atom order so the sums match
  // conditional_utility bit for bit.
  std::vector<double> drive_mass(drive_infosets.size(), 0.0);
  std::vector<double> reply_mass(reply_infosets.size(), 0.0);
  for (const CellAtom& atom : atoms) {
    drive_mass[atom.drive_info] += atom.prob;
    reply_mass[atom.reply_info] += atom.prob;
  }

  std::vector<CellProfile> out;
  const std::size_t n_drive = drive_infosets.size();
  std::vector<Action> drive_actions(n_drive);
  std::vector<std::vector<Action>> reply_best(reply_infosets.size());
  std::vector<Action> reply_actions(reply_infosets.size());

  for (std::size_t mask = 0; mask < (std::size_t{1} << n_drive); ++mask) {
    for (std::size_t i = 0; i < n_drive; ++i) {
      drive_actions[i] = (mask >> i) & 1 ? Action::one : Action::zero;
    }
    // Replying firm's conditional utilities against drive_actions.
    std::vector<double> reply_u0(reply_infosets.size(), 0.0);
    std::vector<double> reply_u1(reply_infosets.size(), 0.0);
    for (const CellAtom& atom : atoms) {
      const Action opp = drive_actions[std::size_t(atom.drive_info)];
      reply_u0[atom.reply_info] +=
          atom.prob * expost_utility(utility, Action::zero, atom.label, opp);
      reply_u1[atom.reply_info] +=
          atom.prob * expost_utility(utility, Action::one, atom.label, opp);
    }
    for (std::size_t j = 0; j < reply_infosets.size(); ++j) {
      const double u0 = reply_u0[j] / reply_mass[j];
      const double u1 = reply_u1[j] / reply_mass[j];
      reply_best[j].clear();
      if (u0 >= u1 - tolerance) reply_best[j].push_back(Action::zero);
      if (u1 >= u0 - tolerance) reply_best[j].push_back(Action::one);
    }
    // Walk the best-response product; keep combinations the driving firm is
    // stable against.
    std::vector<std::size_t> pick(reply_infosets.size(), 0);
    while (true) {
      for (std::size_t j = 0; j < reply_infosets.size(); ++j) {
        reply_actions[j] = reply_best[j][pick[j]];
      }
      std::vector<double> drive_u0(n_drive, 0.0);
      std::vector<double> drive_u1(n_drive, 0.0);
      for (const CellAtom& atom : atoms) {
        const Action opp = reply_actions[std::size_t(atom.reply_info)];
        drive_u0[atom.drive_info] +=
            atom.prob * expost_utility(utility, Action::zero, atom.label, opp);
        drive_u1[atom.drive_info] +=
            atom.prob * expost_utility(utility, Action::one, atom.label, opp);
      }
      bool stable = true;
      for (std::size_t i = 0; i < n_drive && stable; ++i) {
        const double u0 = drive_u0[i] / drive_mass[i];
        const double u1 = drive_u1[i] / drive_mass[i];
        const double chosen = drive_actions[i] == Action::one ? u1 : u0;
        const double alt = drive_actions[i] == Action::one ? u0 : u1;
        stable = chosen >= alt - tolerance;
      }
      if (stable) {
        CellProfile profile;
        profile.s1 = drive1 ? drive_actions : reply_actions;
        profile.s2 = drive1 ? reply_actions : drive_actions;
        out.push_back(std::move(profile));
        if (out.size() > max_profiles) {
          throw capacity_error("equilibrium set too large");
        }
      }
      std::size_t j = reply_infosets.size();
      bool advanced = false;
      while (j > 0) {
        --j;
        if (++pick[j] < reply_best[j].size()) {
          advanced = true;
          break;
        }
        pick[j] = 0;
      }
      if (!advanced) break;
    }
  }
  return out;
}

}  // namespace

std::vector<PureStrategyProfile> enumerate_pure_equilibria(
    const BayesianGame& game, double tolerance) {
  const std::vector<Cell> cells = split_cells(game);
  std::vector<PureStrategyProfile> profiles(1);
  for (const Cell& cell : cells) {
    const std::vector<CellProfile> cell_eqs =
        cell_equilibria(cell, game.utility(), tolerance);
    if (cell_eqs.empty()) return {};
    if (profiles.size() * cell_eqs.size() > max_profiles) {
      throw capacity_error("equilibrium set too large");
    }
    std::vector<PureStrategyProfile> merged;
    merged.reserve(profiles.size() * cell_eqs.size());
    for (const PureStrategyProfile& base : profiles) {
      for (const CellProfile& eq : cell_eqs) {
        PureStrategyProfile profile = base;
        for (std::size_t i = 0; i < cell.infosets1.size(); ++i) {
          profile.s1.emplace(cell.infosets1[i], eq.s1[i]);
        }
        for (std::size_t i = 0; i < cell.infosets2.size(); ++i) {
          profile.s2.emplace(cell.infosets2[i], eq.s2[i]);
        }
        merged.push_back(std::move(profile));
      }
    }
    profiles = std::move(merged);
  }
  std::sort(profiles.begin(), profiles.end());
  return profiles;
}

std::vector<PureStrategyProfile> enumerate_pure_equilibria_naive(
    const BayesianGame& game, double tolerance) {
  const auto& inf1 = game.infosets(Firm::one);
  const auto& inf2 = game.infosets(Firm::two);
  if (inf1.size() + inf2.size() > 24) {
    throw capacity_error("naive enumeration too large");
  }
  std::vector<PureStrategyProfile> out;
  for (std::size_t mask1 = 0; mask1 < (std::size_t{1} << inf1.size());
       ++mask1) {
    PureStrategy s1;
    for (std::size_t i = 0; i < inf1.size(); ++i) {
      s1.emplace(inf1[i], (mask1 >> i) & 1 ? Action::one : Action::zero);
    }
    for (std::size_t mask2 = 0; mask2 < (std::size_t{1} << inf2.size());
         ++mask2) {
      PureStrategy s2;
      for (std::size_t i = 0; i < inf2.size(); ++i) {
        s2.emplace(inf2[i], (mask2 >> i) & 1 ? Action::one : Action::zero);
      }
      bool stable = true;
      for (const std::string& info : inf1) {
        const double u0 =
            conditional_utility(game, Firm::one, info, Action::zero, s2);
        const double u1 =
            conditional_utility(game, Firm::one, info, Action::one, s2);
        const Action chosen = s1.at(info);
        const double gap = chosen == Action::one ? u0 - u1 : u1 - u0;
        if (gap > tolerance) {
          stable = false;
          break;
        }
      }
      for (const std::string& info : inf2) {
        if (!stable) break;
        const double u0 =
            conditional_utility(game, Firm::two, info, Action::zero, s1);
        const double u1 =
            conditional_utility(game, Firm::two, info, Action::one, s1);
        const Action chosen = s2.at(info);
        const double gap = chosen == Action::one ? u0 - u1 : u1 - u0;
        if (gap > tolerance) stable = false;
      }
      if (stable) out.push_back(PureStrategyProfile{s1, std::move(s2)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double interim_utility(const BayesianGame& game,
                       const PureStrategyProfile& profile, Firm firm,
                       const std::string& train_component) {
  const Firm opp = other_firm(firm);
  double mass = 0.0;
  double value = 0.0;
  for (const GameAtom& atom : game.atoms()) {
    if (atom_train(atom, firm) != train_component) continue;
    const Action own = action_at(profile.of(firm), atom_infoset(atom, firm));
    const Action other = action_at(profile.of(opp), atom_infoset(atom, opp));
    mass += atom.prob;
    value += atom.prob *
             expost_utility(game.utility(), own, atom.label, other);
  }
  if (mass <= 0.0) {
    throw model_error("interim utility undefined for training component " +
                      train_component);
  }
  return value / mass;
}

double exante_utility(const BayesianGame& game,
                      const PureStrategyProfile& profile, Firm firm) {
  const Firm opp = other_firm(firm);
  double value = 0.0;
  for (const GameAtom& atom : game.atoms()) {
    const Action own = action_at(profile.of(firm), atom_infoset(atom, firm));
    const Action other = action_at(profile.of(opp), atom_infoset(atom, opp));
    value += atom.prob *
             expost_utility(game.utility(), own, atom.label, other);
  }
  return value;
}

}  // namespace predshare
