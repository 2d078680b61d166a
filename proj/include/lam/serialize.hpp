#pragma once

// Line-oriented, versioned text serialization for graded modules (bicomplex,
// zigzag complex, or tricomplex differentials), plus the 64-bit FNV-1a digest
// used both to seal module files and to fingerprint report inputs.
//
// Layout, one directive per line:
//
//   lam3-module v1
//   field p:32003                  (or: field q)
//   arity 3
//   convention anticommute         (bicomplex files only)
//   window -3 3 untruncated        (zigzag files only)
//   dim 0,0,0 2
//   map d1 1,0,0
//   block 0,0,0
//   1 0
//   0 32002
//   digest 8f0c...                 (FNV-1a-64 of everything above)
//
// Matrix rows are written row-major with exact literals: reduced fractions
// over the rationals, canonical residues modulo p.

#include <array>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <lam/bicomplex.hpp>
#include <lam/tricomplex.hpp>
#include <lam/zigzag.hpp>

namespace lam {

// ---------------------------------------------------------------------------
// Digest.

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// The in-memory form of one serialized module.

template <class K>
struct ModuleFile {
  FieldSpec field;
  GradedSpace space{1};
  std::vector<std::pair<std::string, GradedMap<K>>> maps;
  std::optional<Convention> convention;      // bicomplex files
  std::optional<std::array<int, 3>> window;  // zigzag files: lo, hi, truncated
};

template <class K>
bool file_equal(const ModuleFile<K>& a, const ModuleFile<K>& b) {
  if (a.field.rational != b.field.rational || a.field.p != b.field.p) return false;
  if (a.space != b.space || a.convention != b.convention || a.window != b.window)
    return false;
  if (a.maps.size() != b.maps.size()) return false;
  for (size_t i = 0; i < a.maps.size(); ++i)
    if (a.maps[i].first != b.maps[i].first || !map_equal(a.maps[i].second, b.maps[i].second))
      return false;
  return true;
}

namespace detail {

inline std::string flat_deg(const Deg& d) {
  std::string out;
  for (int i = 0; i < d.arity; ++i) {
    if (i) out += ',';
    out += std::to_string(d[i]);
  }
  return out;
}

inline Deg parse_flat_deg(const std::string& s, int arity, int line) {
  std::vector<int> parts;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ','))
    try {
      parts.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ValidationError("module file line " + std::to_string(line) +
                            ": bad degree component '" + tok + "'");
    }
  if (static_cast<int>(parts.size()) != arity)
    throw ValidationError("module file line " + std::to_string(line) + ": degree '" + s +
                          "' needs " + std::to_string(arity) + " components");
  Deg d = zero_deg(arity);
  for (int i = 0; i < arity; ++i) d[i] = parts[i];
  return d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Writing.

template <class K>
std::string write_module(const ModuleFile<K>& f, const FieldOps<K>& ops) {
  std::ostringstream os;
  os << "lam3-module v1\n";
  os << "field " << f.field.str() << "\n";
  os << "arity " << f.space.arity << "\n";
  if (f.convention)
    os << "convention "
       << (*f.convention == Convention::Anticommute ? "anticommute" : "commute") << "\n";
  if (f.window)
    os << "window " << (*f.window)[0] << ' ' << (*f.window)[1] << ' '
       << ((*f.window)[2] ? "truncated" : "untruncated") << "\n";
  for (auto& [d, n] : f.space.dims) os << "dim " << detail::flat_deg(d) << ' ' << n << "\n";
  for (auto& [name, m] : f.maps) {
    os << "map " << name << ' ' << detail::flat_deg(m.offset) << "\n";
    for (auto& [d, blk] : m.blocks) {
      os << "block " << detail::flat_deg(d) << "\n";
      for (int i = 0; i < blk.rows(); ++i) {
        for (int j = 0; j < blk.cols(); ++j) {
          if (j) os << ' ';
          os << ops.str(blk(i, j));
        }
        os << "\n";
      }
    }
  }
  std::string body = os.str();
  return body + "digest " + hex64(fnv1a64(body)) + "\n";
}

// ---------------------------------------------------------------------------
// Reading.

// The field line alone, so a caller can pick the scalar type before parsing.
inline FieldSpec read_field(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  if (line != "lam3-module v1")
    throw ValidationError("module file: expected 'lam3-module v1' on line 1");
  std::getline(is, line);
  if (line.rfind("field ", 0) != 0)
    throw ValidationError("module file: expected a field line on line 2");
  try {
    return FieldSpec::parse(line.substr(6));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("module file line 2: ") + e.what());
  }
}

template <class K>
ModuleFile<K> read_module(const std::string& text, const FieldOps<K>& ops) {
  ModuleFile<K> f;
  f.field = read_field(text);
  if (f.field.rational != ops.spec.rational || f.field.p != ops.spec.p)
    throw ValidationError("module file: field " + f.field.str() +
                          " does not match the requested " + ops.spec.str());

  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
  }
  auto fail = [](int line, const std::string& msg) -> void {
    throw ValidationError("module file line " + std::to_string(line) + ": " + msg);
  };

  // Verify the seal before interpreting anything, so any byte corruption is
  // reported as such rather than as a coincidental shape error.
  if (lines.empty() || lines.back().rfind("digest ", 0) != 0)
    throw ValidationError("module file: missing digest line");
  {
    std::string body;
    for (size_t l = 0; l + 1 < lines.size(); ++l) body += lines[l] + "\n";
    std::string expect = lines.back().substr(7);
    std::string found = hex64(fnv1a64(body));
    if (found != expect)
      throw ValidationError("module file: digest mismatch (file says " + expect +
                            ", content hashes to " + found + ")");
  }
  lines.pop_back();

  size_t i = 2;  // header and field already consumed
  int arity = 0;
  {
    if (i >= lines.size() || lines[i].rfind("arity ", 0) != 0)
      fail(static_cast<int>(i + 1), "expected an arity line");
    try {
      arity = std::stoi(lines[i].substr(6));
    } catch (const std::exception&) {
      fail(static_cast<int>(i + 1), "bad arity value");
    }
    if (arity < 1 || arity > 4) fail(static_cast<int>(i + 1), "arity out of range");
    ++i;
  }
  f.space = GradedSpace(arity);

  GradedMap<K>* open = nullptr;
  for (; i < lines.size(); ++i) {
    int ln = static_cast<int>(i + 1);
    const std::string& line = lines[i];
    if (line.empty()) fail(ln, "blank line");
    std::istringstream is(line);
    std::string word;
    is >> word;
    if (word == "convention") {
      std::string v;
      is >> v;
      if (v == "anticommute") f.convention = Convention::Anticommute;
      else if (v == "commute") f.convention = Convention::Commute;
      else fail(ln, "convention must be anticommute or commute");
    } else if (word == "window") {
      int lo, hi;
      std::string t;
      if (!(is >> lo >> hi >> t) || (t != "truncated" && t != "untruncated"))
        fail(ln, "window needs '<lo> <hi> truncated|untruncated'");
      f.window = std::array<int, 3>{lo, hi, t == "truncated" ? 1 : 0};
    } else if (word == "dim") {
      std::string ds;
      int n = -1;
      if (!(is >> ds >> n)) fail(ln, "dim needs '<degree> <n>'");
      Deg d = detail::parse_flat_deg(ds, arity, ln);
      if (n < 1) fail(ln, "dimension at " + str(d) + " must be positive");
      if (f.space.dim(d) != 0) fail(ln, "repeated dimension at " + str(d));
      f.space.set_dim(d, n);
    } else if (word == "map") {
      std::string name, off;
      if (!(is >> name >> off)) fail(ln, "map needs '<name> <offset>'");
      f.maps.emplace_back(name, GradedMap<K>(f.space, f.space,
                                             detail::parse_flat_deg(off, arity, ln)));
      open = &f.maps.back().second;
    } else if (word == "block") {
      if (!open) fail(ln, "block before any map line");
      std::string ds;
      if (!(is >> ds)) fail(ln, "block needs a degree");
      Deg d = detail::parse_flat_deg(ds, arity, ln);
      int rows = f.space.dim(d + open->offset), cols = f.space.dim(d);
      if (rows == 0 || cols == 0)
        fail(ln, "block at " + str(d) + " maps between zero spaces");
      Mat<K> blk(rows, cols);
      for (int rr = 0; rr < rows; ++rr) {
        ++i;
        if (i >= lines.size())
          fail(static_cast<int>(i + 1), "block at " + str(d) + " is missing rows");
        std::istringstream row(lines[i]);
        std::string tok;
        for (int cc = 0; cc < cols; ++cc) {
          if (!(row >> tok))
            fail(static_cast<int>(i + 1), "block at " + str(d) + " row has too few entries");
          try {
            blk(rr, cc) = ops.parse(tok);
          } catch (const std::exception&) {
            fail(static_cast<int>(i + 1), "bad scalar '" + tok + "' at " + str(d));
          }
        }
        std::string extra;
        if (row >> extra)
          fail(static_cast<int>(i + 1), "block at " + str(d) + " row has too many entries");
      }
      if (open->blocks.count(d)) fail(ln, "repeated block at " + str(d));
      open->set_block(d, std::move(blk));
    } else {
      fail(ln, "unknown directive '" + word + "'");
    }
  }
  // Each map captured the space as it stood when its line appeared; rebind
  // against the final space so block shapes are validated once more against
  // the complete dimension table.
  for (auto& [name, m] : f.maps) {
    GradedMap<K> rebound(f.space, f.space, m.offset);
    try {
      for (auto& [d, blk] : m.blocks) rebound.set_block(d, blk);
    } catch (const std::invalid_argument& e) {
      throw ValidationError("module file: map '" + name + "': " + e.what());
    }
    m = std::move(rebound);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Converters between files and the structured types.  Constructing through
// the make_* validators keeps every invariant check in one place.

namespace detail {

template <class K>
const GradedMap<K>& need_map(const ModuleFile<K>& f, const std::string& name) {
  for (auto& [n, m] : f.maps)
    if (n == name) return m;
  throw ValidationError("module file: missing map '" + name + "'");
}

}  // namespace detail

template <class K>
ModuleFile<K> to_file(const Bicomplex<K>& b, FieldSpec field) {
  ModuleFile<K> f;
  f.field = field;
  f.space = b.space;
  f.maps = {{"d1", b.d1}, {"d2", b.d2}};
  f.convention = b.convention;
  return f;
}

template <class K>
ModuleFile<K> to_file(const Tricomplex<K>& m, FieldSpec field) {
  ModuleFile<K> f;
  f.field = field;
  f.space = m.space;
  f.maps = {{"d1", m.d1}, {"d2", m.d2}, {"d3", m.d3}};
  return f;
}

template <class K>
ModuleFile<K> to_file(const AComplex<K>& c) {
  ModuleFile<K> f;
  f.field = c.alg.field;
  f.space = c.space;
  f.maps = {{"raise", c.raise}, {"lower", c.lower}, {"d", c.d}};
  f.window = std::array<int, 3>{c.alg.lo, c.alg.hi, c.alg.truncated ? 1 : 0};
  return f;
}

template <class K>
Bicomplex<K> as_bicomplex(const ModuleFile<K>& f) {
  if (f.space.arity != 2)
    throw ValidationError("module file: a bicomplex needs arity 2");
  if (!f.convention)
    throw ValidationError("module file: a bicomplex needs a convention line");
  return make_bicomplex(f.space, detail::need_map(f, "d1"), detail::need_map(f, "d2"),
                        *f.convention);
}

template <class K>
Tricomplex<K> as_tricomplex(const ModuleFile<K>& f) {
  if (f.space.arity != 3)
    throw ValidationError("module file: a tricomplex needs arity 3");
  return make_tricomplex(f.space, detail::need_map(f, "d1"), detail::need_map(f, "d2"),
                         detail::need_map(f, "d3"));
}

template <class K>
AComplex<K> as_acomplex(const ModuleFile<K>& f) {
  if (f.space.arity != 3)
    throw ValidationError("module file: a zigzag complex needs arity 3");
  if (!f.window)
    throw ValidationError("module file: a zigzag complex needs a window line");
  ZigzagAlgebra alg =
      build_algebra(f.field, (*f.window)[0], (*f.window)[1], (*f.window)[2] != 0);
  return make_acomplex(alg, f.space, detail::need_map(f, "raise"),
                       detail::need_map(f, "lower"), detail::need_map(f, "d"));
}

}  // namespace lam
