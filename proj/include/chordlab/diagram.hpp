#pragma once

#include <cctype>
#include <compare>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chordlab {

enum class SiteKind { ChordEnd, MarkedPoint };

enum class Orientation { Oriented, NonOriented };

inline std::string to_string(Orientation o) { return o == Orientation::Oriented ? "oriented" : "nonoriented"; }

inline Orientation parse_orientation(std::string_view text) {
  if (text == "oriented") return Orientation::Oriented;
  if (text == "nonoriented" || text == "non-oriented") return Orientation::NonOriented;
  throw std::invalid_argument("unknown orientation: " + std::string(text));
}

struct SiteAddress {
  int backbone = 0;
  int site = 0;
  friend auto operator<=>(const SiteAddress&, const SiteAddress&) = default;
};

struct Chord {
  SiteAddress end_a;
  SiteAddress end_b;
  bool twisted = false;
  friend bool operator==(const Chord&, const Chord&) = default;
};

using Backbone = std::vector<SiteKind>;

/// Backbones laid out left to right, chords pairing every chord-end site.
///
/// Diagrams compare positionally: two diagrams are equal only if they have the
/// same backbone sequence and the same chord list.
class PartialChordDiagram {
 public:
  PartialChordDiagram(std::vector<Backbone> backbones, std::vector<Chord> chords, Orientation mode)
      : backbones_(std::move(backbones)), chords_(std::move(chords)), mode_(mode) {
    validate();
  }

  const std::vector<Backbone>& backbones() const { return backbones_; }
  const std::vector<Chord>& chords() const { return chords_; }
  Orientation mode() const { return mode_; }

  int backbone_count() const { return static_cast<int>(backbones_.size()); }
  int chord_count() const { return static_cast<int>(chords_.size()); }
  int site_count() const {
    int m = 0;
    for (const auto& b : backbones_) m += static_cast<int>(b.size());
    return m;
  }
  int marked_point_count() const { return site_count() - 2 * chord_count(); }

  SiteKind kind_at(SiteAddress a) const { return backbones_[a.backbone][a.site]; }

  friend bool operator==(const PartialChordDiagram&, const PartialChordDiagram&) = default;

 private:
  void validate() const {
    std::vector<std::vector<int>> used(backbones_.size());
    for (std::size_t b = 0; b < backbones_.size(); ++b) used[b].assign(backbones_[b].size(), 0);
    auto check_end = [&](SiteAddress a) {
      if (a.backbone < 0 || a.backbone >= backbone_count() || a.site < 0 ||
          a.site >= static_cast<int>(backbones_[a.backbone].size())) {
        throw std::invalid_argument("chord end address out of range");
      }
      if (backbones_[a.backbone][a.site] != SiteKind::ChordEnd) {
        throw std::invalid_argument("chord attached to a marked point");
      }
      if (used[a.backbone][a.site]++ != 0) throw std::invalid_argument("chord end used twice");
    };
    for (const auto& c : chords_) {
      if (c.end_a == c.end_b) throw std::invalid_argument("chord joins a site to itself");
      if (c.twisted && mode_ == Orientation::Oriented) {
        throw std::invalid_argument("twisted chord in an oriented diagram");
      }
      check_end(c.end_a);
      check_end(c.end_b);
    }
    for (std::size_t b = 0; b < backbones_.size(); ++b) {
      for (std::size_t s = 0; s < backbones_[b].size(); ++s) {
        if (backbones_[b][s] == SiteKind::ChordEnd && used[b][s] == 0) {
          throw std::invalid_argument("unmatched chord end");
        }
      }
    }
  }

  std::vector<Backbone> backbones_;
  std::vector<Chord> chords_;
  Orientation mode_;
};

/// Backbone graph connectivity: one node per backbone, one edge per chord.
inline bool is_connected(const PartialChordDiagram& d) {
  const int b = d.backbone_count();
  if (b == 0) return false;
  std::vector<int> parent(b);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = b;
  for (const auto& c : d.chords()) {
    int x = find(c.end_a.backbone), y = find(c.end_b.backbone);
    if (x != y) {
      parent[x] = y;
      --components;
    }
  }
  return components == 1;
}

// Literal form: backbones=[MCCM,CC] chords=[(0.1-0.2,u),(1.0-1.1,t)] [mode=...]
// An empty backbone is written "_".

inline std::string format_diagram(const PartialChordDiagram& d) {
  std::string out = "backbones=[";
  for (int b = 0; b < d.backbone_count(); ++b) {
    if (b) out += ',';
    if (d.backbones()[b].empty()) out += '_';
    for (SiteKind k : d.backbones()[b]) out += (k == SiteKind::ChordEnd ? 'C' : 'M');
  }
  out += "] chords=[";
  for (int i = 0; i < d.chord_count(); ++i) {
    const auto& c = d.chords()[i];
    if (i) out += ',';
    out += '(' + std::to_string(c.end_a.backbone) + '.' + std::to_string(c.end_a.site) + '-' +
           std::to_string(c.end_b.backbone) + '.' + std::to_string(c.end_b.site) + ',' +
           (c.twisted ? 't' : 'u') + ')';
  }
  out += ']';
  if (d.mode() == Orientation::NonOriented) out += " mode=nonoriented";
  return out;
}

namespace detail {

class LiteralReader {
 public:
  explicit LiteralReader(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  void expect(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  int integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                   text_[pos_] == '-')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("diagram literal: " + what + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the literal form. The mode defaults to non-oriented iff a twisted chord
/// is present, unless a trailing `mode=` token says otherwise.
inline PartialChordDiagram parse_diagram(std::string_view text) {
  detail::LiteralReader in(text);
  std::vector<Backbone> backbones;
  std::vector<Chord> chords;
  in.expect("backbones=[");
  if (!in.accept("]")) {
    for (;;) {
      Backbone b;
      if (!in.accept("_")) {
        for (char c = in.peek(); c == 'C' || c == 'M'; c = in.peek()) {
          in.expect(std::string_view(&c, 1));
          b.push_back(c == 'C' ? SiteKind::ChordEnd : SiteKind::MarkedPoint);
        }
      }
      backbones.push_back(std::move(b));
      if (in.accept("]")) break;
      in.expect(",");
    }
  }
  in.expect("chords=[");
  bool any_twist = false;
  if (!in.accept("]")) {
    for (;;) {
      Chord c;
      in.expect("(");
      c.end_a.backbone = in.integer();
      in.expect(".");
      c.end_a.site = in.integer();
      in.expect("-");
      c.end_b.backbone = in.integer();
      in.expect(".");
      c.end_b.site = in.integer();
      in.expect(",");
      if (in.accept("t")) {
        c.twisted = true;
        any_twist = true;
      } else {
        in.expect("u");
      }
      in.expect(")");
      chords.push_back(c);
      if (in.accept("]")) break;
      in.expect(",");
    }
  }
  Orientation mode = any_twist ? Orientation::NonOriented : Orientation::Oriented;
  if (in.accept("mode=")) mode = parse_orientation(in.word());
  if (!in.done()) in.fail("trailing characters");
  return PartialChordDiagram(std::move(backbones), std::move(chords), mode);
}

}  // namespace chordlab
