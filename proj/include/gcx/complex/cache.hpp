#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gcx/complex/assemble.hpp"

namespace gcx {

inline constexpr const char* kCacheHeader = "GCXCACHE 1";
inline constexpr const char* kCacheDirEnv = "GCX_CACHE_DIR";

// Cache directory: explicit argument, then $GCX_CACHE_DIR, then ./.gcx-cache.
inline std::filesystem::path cache_directory(const std::string& explicit_dir = "") {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  return ".gcx-cache";
}

inline std::string encoding_from_text(const std::string& text) {
  if (text.compare(0, 4, "MG1:") != 0) throw std::invalid_argument("cache: bad encoding '" + text + "'");
  std::string out = "MG1:";
  std::stringstream ss(text.substr(4));
  std::string tok;
  while (std::getline(ss, tok, '.')) out.push_back(static_cast<char>(std::stoi(tok)));
  return out;
}

/**
 * Text format:
 *   GCXCACHE 1
 *   key <key>
 *   meta <sector> <g> <n> <decoration> <twist> <tadpoles> <genus> <legmode> <cap> <degree convention>
 *   degree <k> <count>         followed by <count> lines "<encoding> <aut order> <label>"
 *   matrix <k> <rows> <cols> <nnz>   followed by <nnz> lines "<row> <col> <num> <den>"
 */
inline void write_complex(std::ostream& os, const ChainComplexData& c) {
  const auto& m = c.meta;
  os << kCacheHeader << "\n";
  os << "key " << m.key() << "\n";
  os << "meta " << sector_name(m.sector) << " " << m.g << " " << m.n << " " << m.decoration << " " << m.twist.name() << " "
     << m.constraints.allow_tadpoles << " " << m.constraints.allow_positive_genus << " "
     << (m.leg_mode == LegMode::Labeled ? "labeled" : "unlabeled") << " " << m.edge_cap << " " << m.degree_convention << "\n";
  for (const auto& [k, b] : c.basis) {
    os << "degree " << k << " " << b.size() << "\n";
    for (const auto& e : b) os << encoding_text(c.graphs[e.graph].encoding) << " " << e.aut_order << " " << e.label << "\n";
  }
  for (const auto& [k, mat] : c.contraction) {
    os << "matrix " << k << " " << mat.rows() << " " << mat.cols() << " " << mat.nnz() << "\n";
    for (const auto& e : mat.entries())
      os << e.row << " " << e.col << " " << e.value.get_num().get_str() << " " << e.value.get_den().get_str() << "\n";
  }
}

inline ChainComplexData read_complex(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCacheHeader) throw std::runtime_error("cache: version header mismatch");
  ChainComplexData c;
  std::unordered_map<std::string, std::size_t> graph_of;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "key") continue;
    if (tag == "meta") {
      std::string sector, twist, legmode;
      int tad = 1, gen = 1;
      ls >> sector >> c.meta.g >> c.meta.n >> c.meta.decoration >> twist >> tad >> gen >> legmode >> c.meta.edge_cap >>
          c.meta.degree_convention;
      c.meta.sector = parse_sector(sector);
      c.meta.twist.kind = twist.rfind("edge-order", 0) == 0 ? TwistKind::EdgeOrder : TwistKind::VertexOrderEdgeDir;
      c.meta.twist.leg_order = twist.size() > 5 && twist.substr(twist.size() - 5) == "+legs";
      c.meta.constraints = {tad != 0, gen != 0};
      c.meta.leg_mode = legmode == "labeled" ? LegMode::Labeled : LegMode::Unlabeled;
    } else if (tag == "degree") {
      int k = 0;
      std::size_t count = 0;
      ls >> k >> count;
      auto& b = c.basis[k];
      for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("cache: truncated basis");
        std::istringstream bs(line);
        std::string enc_text;
        BasisElement e;
        bs >> enc_text >> e.aut_order;
        std::getline(bs >> std::ws, e.label);
        auto enc = encoding_from_text(enc_text);
        auto [it, fresh] = graph_of.emplace(enc, c.graphs.size());
        if (fresh) {
          CanonicalForm cf;
          cf.encoding = enc;
          cf.graph = decode_encoding(enc);
          cf.leg_mode = c.meta.leg_mode;
          cf.relabeling = GraphMap::identity(cf.graph);
          c.graphs.push_back(std::move(cf));
        }
        e.graph = it->second;
        b.push_back(std::move(e));
      }
    } else if (tag == "matrix") {
      int k = 0;
      std::size_t rows = 0, cols = 0, nnz = 0;
      ls >> k >> rows >> cols >> nnz;
      std::vector<MatrixEntry<Rational>> trip;
      trip.reserve(nnz);
      for (std::size_t i = 0; i < nnz; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("cache: truncated matrix");
        std::istringstream ts(line);
        std::size_t r = 0, col = 0;
        std::string num, den;
        ts >> r >> col >> num >> den;
        Rational q{Integer(num), Integer(den)};
        q.canonicalize();
        trip.push_back({r, col, q});
      }
      c.contraction[k] = SparseMatrix<Rational>::from_triplets(rows, cols, std::move(trip));
    } else if (!tag.empty()) {
      throw std::runtime_error("cache: unknown record '" + tag + "'");
    }
  }
  return c;
}

inline std::filesystem::path cache_file(const ComplexMetadata& m, const std::string& dir = "") {
  return cache_directory(dir) / (m.key() + ".gcx");
}

inline void save_complex(const ChainComplexData& c, const std::string& dir = "") {
  auto path = cache_file(c.meta, dir);
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    write_complex(os, c);
    if (!os) throw std::runtime_error("cache: cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/**
 * Complex for a named sector, read from the cache when present and stored
 * after assembly otherwise. Cached complexes carry no Lie decoration data.
 */
inline ChainComplexData load_or_build(Sector s, int g, int n, bool anti, int edge_cap, const std::string& dir = "",
                                      bool use_cache = true, bool* hit = nullptr) {
  ComplexMetadata probe;
  probe.sector = s;
  probe.g = g;
  probe.n = n;
  probe.leg_mode = anti ? LegMode::Unlabeled : LegMode::Labeled;
  probe.edge_cap = edge_cap;
  if (hit) *hit = false;
  if (use_cache) {
    auto path = cache_file(probe, dir);
    if (std::filesystem::exists(path)) {
      std::ifstream is(path, std::ios::binary);
      auto c = read_complex(is);
      check_square_zero(c);
      if (hit) *hit = true;
      return c;
    }
  }
  auto c = build_sector(s, g, n, anti, edge_cap);
  if (use_cache) save_complex(c, dir);
  return c;
}

}  // namespace gcx
