//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/molio/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "pairscore/error.hpp"

namespace pairscore::molio {
namespace {
constexpr std::array<std::string_view, kElementCount> kSymbols = {
  "B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I",
};

constexpr int kValB[] = { 3 };
constexpr int kValC[] = { 4 };
constexpr int kValN[] = { 3 };
constexpr int kValO[] = { 2 };
constexpr int kValP[] = { 3, 5 };
constexpr int kValS[] = { 2, 4, 6 };
constexpr int kValHalogen[] = { 1 };

struct PendingBond {
  BondOrder order;
};

struct RingOpening {
  std::size_t atom;
  std::optional<BondOrder> bond;
  std::size_t position;
};

struct ParsedAtom {
  AtomRecord record;
  bool bracket = false;
};

[[noreturn]] void fail(ErrorCode code, std::string_view text,
                       std::size_t pos, std::string_view what) {
  throw Error(code, std::string(what) + " at position " + std::to_string(pos)
                        + " in '" + std::string(text) + "'");
}

bool aromatic_capable(Element e) {
  switch (e) {
  case Element::B:
  case Element::C:
  case Element::N:
  case Element::O:
  case Element::P:
  case Element::S: return true;
  default: return false;
  }
}

int bond_valence(BondOrder order) {
  switch (order) {
  case BondOrder::Single: return 1;
  case BondOrder::Double: return 2;
  case BondOrder::Triple: return 3;
  case BondOrder::Aromatic: return 1;
  }
  return 1;
}

class Parser {
 public:
  explicit Parser(std::string_view text): text_(text) { }

  MolecularGraph run() {
    if (text_.empty()) throw Error(ErrorCode::EmptyInput, "empty SMILES");

    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      switch (ch) {
      case '(': open_branch(); break;
      case ')': close_branch(); break;
      case '-':
      case '=':
      case '#':
      case ':':
      case '/':
      case '\\': read_bond(ch); break;
      case '.': dot(); break;
      case '%': ring_closure(); break;
      case '[': bracket_atom(); break;
      default:
        if (std::isdigit(static_cast<unsigned char>(ch)) != 0) {
          ring_closure();
        } else {
          organic_atom();
        }
      }
    }

    if (!branches_.empty()) {
      fail(ErrorCode::UnbalancedParenthesis, text_, branch_positions_.back(),
           "unclosed '('");
    }
    if (!rings_.empty()) {
      const auto &[num, open] = *rings_.begin();
      fail(ErrorCode::UnmatchedRingBond, text_, open.position,
           "ring closure " + std::to_string(num) + " never closed");
    }
    if (pending_) fail(ErrorCode::SmilesSyntax, text_, pos_, "dangling bond");
    if (atoms_.empty()) throw Error(ErrorCode::EmptyInput, "no atoms");

    return finish();
  }

 private:
  void open_branch() {
    if (!prev_ || pending_) {
      fail(ErrorCode::SmilesSyntax, text_, pos_, "branch without a preceding atom");
    }
    branches_.push_back(*prev_);
    branch_positions_.push_back(pos_);
    ++pos_;
  }

  void close_branch() {
    if (branches_.empty()) {
      fail(ErrorCode::UnbalancedParenthesis, text_, pos_, "unmatched ')'");
    }
    if (pending_) fail(ErrorCode::SmilesSyntax, text_, pos_, "dangling bond");
    prev_ = branches_.back();
    branches_.pop_back();
    branch_positions_.pop_back();
    ++pos_;
  }

  void read_bond(char ch) {
    if (pending_ || !prev_) {
      fail(ErrorCode::SmilesSyntax, text_, pos_, "unexpected bond symbol");
    }
    switch (ch) {
    case '=': pending_ = BondOrder::Double; break;
    case '#': pending_ = BondOrder::Triple; break;
    case ':': pending_ = BondOrder::Aromatic; break;
    default: pending_ = BondOrder::Single; break;
    }
    ++pos_;
  }

  void dot() {
    if (pending_ || !prev_) {
      fail(ErrorCode::SmilesSyntax, text_, pos_, "misplaced '.'");
    }
    prev_.reset();
    ++pos_;
  }

  void ring_closure() {
    const std::size_t start = pos_;
    if (!prev_) fail(ErrorCode::SmilesSyntax, text_, pos_, "ring closure without atom");
    int number;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size()
          || std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) == 0
          || std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])) == 0) {
        fail(ErrorCode::SmilesSyntax, text_, pos_, "'%' must be followed by two digits");
      }
      number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = text_[pos_] - '0';
      ++pos_;
    }

    auto it = rings_.find(number);
    if (it == rings_.end()) {
      rings_.emplace(number, RingOpening { *prev_, pending_, start });
      pending_.reset();
      return;
    }

    const RingOpening open = it->second;
    rings_.erase(it);
    if (open.atom == *prev_) {
      fail(ErrorCode::SmilesSyntax, text_, start, "ring closure onto the same atom");
    }
    std::optional<BondOrder> order = open.bond;
    if (pending_) {
      if (order && *order != *pending_) {
        fail(ErrorCode::SmilesSyntax, text_, start, "conflicting ring bond orders");
      }
      order = pending_;
    }
    pending_.reset();
    add_bond(open.atom, *prev_, order, start);
  }

  void organic_atom() {
    const std::size_t start = pos_;
    const char ch = text_[pos_];
    AtomRecord atom;
    std::optional<Element> element;
    if (ch == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      element = Element::Cl;
      pos_ += 2;
    } else if (ch == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      element = Element::Br;
      pos_ += 2;
    } else if (std::isupper(static_cast<unsigned char>(ch)) != 0) {
      element = element_from_symbol(std::string_view(&text_[pos_], 1));
      ++pos_;
    } else if (std::islower(static_cast<unsigned char>(ch)) != 0) {
      const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      element = element_from_symbol(std::string_view(&upper, 1));
      if (element && !aromatic_capable(*element)) element.reset();
      atom.aromatic = true;
      ++pos_;
    }
    if (!element) {
      fail(ErrorCode::UnknownSymbol, text_, start,
           "unsupported symbol '" + std::string(1, ch) + "'");
    }
    atom.element = *element;
    add_atom(ParsedAtom { atom, false }, start);
  }

  void bracket_atom() {
    const std::size_t start = pos_;
    ++pos_;  // '['
    while (pos_ < text_.size()
           && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0)
      ++pos_;  // isotope

    if (pos_ >= text_.size()) fail(ErrorCode::SmilesSyntax, text_, start, "unterminated '['");

    AtomRecord atom;
    std::string symbol;
    const char first = text_[pos_];
    if (std::isupper(static_cast<unsigned char>(first)) != 0) {
      symbol += first;
      ++pos_;
      if (pos_ < text_.size()
          && std::islower(static_cast<unsigned char>(text_[pos_])) != 0) {
        symbol += text_[pos_];
        ++pos_;
      }
    } else if (std::islower(static_cast<unsigned char>(first)) != 0) {
      atom.aromatic = true;
      symbol += static_cast<char>(std::toupper(static_cast<unsigned char>(first)));
      ++pos_;
      // Two-letter aromatic symbols (se, as) are outside the subset.
      if (pos_ < text_.size()
          && std::islower(static_cast<unsigned char>(text_[pos_])) != 0) {
        symbol += text_[pos_];
        ++pos_;
      }
    } else {
      fail(ErrorCode::UnknownSymbol, text_, pos_,
           "unsupported symbol '" + std::string(1, first) + "'");
    }
    const auto element = element_from_symbol(symbol);
    if (!element || (atom.aromatic && !aromatic_capable(*element))) {
      fail(ErrorCode::UnknownSymbol, text_, start,
           "unsupported element '" + symbol + "'");
    }
    atom.element = *element;

    while (pos_ < text_.size() && text_[pos_] == '@') ++pos_;
    // Extended chirality classes such as @TH1 or @SP2.
    while (pos_ + 1 < text_.size()
           && std::isupper(static_cast<unsigned char>(text_[pos_])) != 0
           && text_[pos_] != 'H'
           && std::isupper(static_cast<unsigned char>(text_[pos_ + 1])) != 0) {
      pos_ += 2;
      while (pos_ < text_.size()
             && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0)
        ++pos_;
    }

    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      atom.h_count = 1;
      if (pos_ < text_.size()
          && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
        atom.h_count = read_number();
      }
    }

    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char sign = text_[pos_];
      const int unit = sign == '+' ? 1 : -1;
      ++pos_;
      if (pos_ < text_.size()
          && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
        atom.formal_charge = unit * read_number();
      } else {
        int magnitude = 1;
        while (pos_ < text_.size() && text_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
        atom.formal_charge = unit * magnitude;
      }
    }

    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      if (pos_ >= text_.size()
          || std::isdigit(static_cast<unsigned char>(text_[pos_])) == 0) {
        fail(ErrorCode::SmilesSyntax, text_, pos_, "atom class without digits");
      }
      read_number();
    }

    if (pos_ >= text_.size() || text_[pos_] != ']') {
      fail(ErrorCode::SmilesSyntax, text_, start, "malformed bracket atom");
    }
    ++pos_;
    add_atom(ParsedAtom { atom, true }, start);
  }

  int read_number() {
    int value = 0;
    while (pos_ < text_.size()
           && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000) fail(ErrorCode::SmilesSyntax, text_, pos_, "number too large");
      ++pos_;
    }
    return value;
  }

  void add_atom(ParsedAtom atom, std::size_t position) {
    const std::size_t index = atoms_.size();
    atoms_.push_back(atom);
    if (prev_) {
      add_bond(*prev_, index, pending_, position);
    } else if (pending_) {
      fail(ErrorCode::SmilesSyntax, text_, position, "bond without a preceding atom");
    }
    pending_.reset();
    prev_ = index;
  }

  void add_bond(std::size_t a, std::size_t b, std::optional<BondOrder> order,
                std::size_t position) {
    const auto key = std::minmax(a, b);
    if (!bonded_.insert(key).second) {
      fail(ErrorCode::SmilesSyntax, text_, position, "duplicate bond");
    }
    BondOrder resolved = BondOrder::Single;
    if (order) {
      resolved = *order;
    } else if (atoms_[a].record.aromatic && atoms_[b].record.aromatic) {
      resolved = BondOrder::Aromatic;
    }
    bonds_.push_back(BondRecord { a, b, resolved });
  }

  MolecularGraph finish() {
    MolecularGraph graph;
    graph.bonds = std::move(bonds_);
    std::vector<int> valence(atoms_.size(), 0);
    for (const auto &bond: graph.bonds) {
      const int v = bond_valence(bond.order);
      valence[bond.i] += v;
      valence[bond.j] += v;
    }
    graph.atoms.reserve(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) graph.atoms.push_back(atoms_[i].record);
    for (const auto &bond: graph.bonds) {
      ++graph.atoms[bond.i].degree;
      ++graph.atoms[bond.j].degree;
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (atoms_[i].bracket) continue;
      AtomRecord &atom = graph.atoms[i];
      int used = valence[i];
      if (atom.aromatic && atom.element != Element::O && atom.element != Element::S) {
        ++used;
      }
      atom.h_count = 0;
      for (int v: standard_valences(atom.element)) {
        if (v >= used) {
          atom.h_count = v - used;
          break;
        }
      }
    }
    return graph;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<ParsedAtom> atoms_;
  std::vector<BondRecord> bonds_;
  std::set<std::pair<std::size_t, std::size_t>> bonded_;
  std::optional<std::size_t> prev_;
  std::optional<BondOrder> pending_;
  std::vector<std::size_t> branches_;
  std::vector<std::size_t> branch_positions_;
  std::map<int, RingOpening> rings_;
};
}  // namespace

std::string_view element_symbol(Element e) noexcept {
  return kSymbols[static_cast<std::size_t>(e)];
}

std::optional<Element> element_from_symbol(std::string_view symbol) noexcept {
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (kSymbols[i] == symbol) return static_cast<Element>(i);
  }
  return std::nullopt;
}

std::span<const int> standard_valences(Element e) noexcept {
  switch (e) {
  case Element::B: return kValB;
  case Element::C: return kValC;
  case Element::N: return kValN;
  case Element::O: return kValO;
  case Element::P: return kValP;
  case Element::S: return kValS;
  default: return kValHalogen;
  }
}

std::vector<std::vector<std::size_t>> MolecularGraph::incidence() const {
  std::vector<std::vector<std::size_t>> out(atoms.size());
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    out[bonds[b].i].push_back(b);
    out[bonds[b].j].push_back(b);
  }
  return out;
}

MolecularGraph parse_smiles(std::string_view text) {
  return Parser(text).run();
}

void validate(const MolecularGraph &graph) {
  if (graph.atoms.empty()) throw Error(ErrorCode::SmilesSyntax, "graph has no atoms");
  std::vector<int> degree(graph.atoms.size(), 0);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto &bond: graph.bonds) {
    if (bond.i >= graph.atoms.size() || bond.j >= graph.atoms.size()) {
      throw Error(ErrorCode::SmilesSyntax, "bond endpoint out of range");
    }
    if (bond.i == bond.j) throw Error(ErrorCode::SmilesSyntax, "self-loop bond");
    if (!seen.insert(std::minmax(bond.i, bond.j)).second) {
      throw Error(ErrorCode::SmilesSyntax, "parallel bonds");
    }
    ++degree[bond.i];
    ++degree[bond.j];
  }
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    if (graph.atoms[i].degree != degree[i]) {
      throw Error(ErrorCode::SmilesSyntax,
                  "atom " + std::to_string(i) + " degree disagrees with bonds");
    }
    if (graph.atoms[i].h_count < 0) {
      throw Error(ErrorCode::SmilesSyntax, "negative hydrogen count");
    }
  }
}

MolecularGraph permute_atoms(const MolecularGraph &graph,
                             std::span<const std::size_t> perm) {
  if (perm.size() != graph.atoms.size()) {
    throw Error(ErrorCode::InvalidArgument, "permutation size mismatch");
  }
  MolecularGraph out;
  out.atoms.resize(graph.atoms.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out.atoms.at(perm[i]) = graph.atoms[i];
  out.bonds.reserve(graph.bonds.size());
  for (const auto &bond: graph.bonds) {
    out.bonds.push_back(BondRecord { perm[bond.i], perm[bond.j], bond.order });
  }
  return out;
}

}  // namespace pairscore::molio
