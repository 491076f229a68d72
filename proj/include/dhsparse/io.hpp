#pragma once

// Text formats.
//
//   .dhg — directed hypergraph.  First line "dhg 1 <n>", then one edge
//   per line: "<|T|> <tail...> <|H|> <head...> <weight>".  Edge ids are
//   implicit line positions 0, 1, 2, ...  Lines starting with '#' and
//   blank lines are ignored.
//
//   .dhu — update stream.  Lines are
//     add <|T|> <tail...> <|H|> <head...> <weight>
//     del <edge-id>
//     batch <count>        (groups the next <count> add/del lines)
//
// Weights are written in shortest round-trip decimal form, so
// write -> parse -> write reproduces files byte for byte.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "hypergraph.hpp"

namespace dhsparse {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

template <typename Int>
Int parse_int(const std::string& tok, std::size_t line, const char* what) {
  Int value{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw ParseError(std::string("invalid ") + what + " '" + tok + "'", line);
  return value;
}

inline double parse_double(const std::string& tok, std::size_t line, const char* what) {
  double value{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw ParseError(std::string("invalid ") + what + " '" + tok + "'", line);
  return value;
}

inline bool is_skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;  // blank
}

// Parses "<|T|> <tail...> <|H|> <head...> <weight>" from tokens[from..].
inline EdgeSpec parse_edge_tokens(const std::vector<std::string>& tokens, std::size_t from,
                                  std::size_t line) {
  EdgeSpec spec;
  std::size_t pos = from;
  auto need = [&](const char* what) -> const std::string& {
    if (pos >= tokens.size()) throw ParseError(std::string("missing ") + what, line);
    return tokens[pos++];
  };
  std::uint32_t tail_n = parse_int<std::uint32_t>(need("tail size"), line, "tail size");
  for (std::uint32_t i = 0; i < tail_n; ++i)
    spec.tail.push_back(parse_int<VertexId>(need("tail vertex"), line, "tail vertex"));
  std::uint32_t head_n = parse_int<std::uint32_t>(need("head size"), line, "head size");
  for (std::uint32_t i = 0; i < head_n; ++i)
    spec.head.push_back(parse_int<VertexId>(need("head vertex"), line, "head vertex"));
  spec.weight = parse_double(need("weight"), line, "weight");
  if (pos != tokens.size()) throw ParseError("trailing tokens '" + tokens[pos] + "'", line);
  return spec;
}

}  // namespace detail

inline Hypergraph read_dhg(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint32_t n = 0;
  std::vector<EdgeSpec> specs;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_skippable(line)) continue;
    auto tokens = detail::split_tokens(line);
    if (!have_header) {
      if (tokens.size() != 3 || tokens[0] != "dhg")
        throw ParseError("expected header 'dhg 1 <n>'", lineno);
      if (detail::parse_int<std::uint32_t>(tokens[1], lineno, "format version") != 1)
        throw ParseError("unsupported format version '" + tokens[1] + "'", lineno);
      n = detail::parse_int<std::uint32_t>(tokens[2], lineno, "vertex count");
      have_header = true;
      continue;
    }
    specs.push_back(detail::parse_edge_tokens(tokens, 0, lineno));
  }
  if (!have_header) throw ParseError("missing header 'dhg 1 <n>'", lineno + 1);
  try {
    return Hypergraph(n, std::move(specs));
  } catch (const std::exception& e) {
    throw ParseError(e.what(), lineno);
  }
}

inline void write_dhg(const Hypergraph& h, std::ostream& out) {
  out << "dhg 1 " << h.vertex_count() << "\n";
  for (const auto& e : h.edges()) {
    out << e.tail.size();
    for (VertexId u : e.tail) out << ' ' << u;
    out << ' ' << e.head.size();
    for (VertexId v : e.head) out << ' ' << v;
    out << ' ' << detail::format_double(e.weight) << "\n";
  }
}

inline Hypergraph read_dhg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_dhg(in);
}

inline void write_dhg_file(const Hypergraph& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_dhg(h, out);
}

struct UpdateOp {
  enum class Kind { Add, Del };
  Kind kind = Kind::Add;
  EdgeSpec spec;  // Add only
  EdgeId id = 0;  // Del only
};

// One unit of replay: a single op, or a batch applied atomically.
struct UpdateGroup {
  bool is_batch = false;
  std::vector<UpdateOp> ops;
};

inline std::vector<UpdateGroup> read_dhu(std::istream& in) {
  std::vector<UpdateGroup> groups;
  std::string line;
  std::size_t lineno = 0;
  std::size_t batch_remaining = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_skippable(line)) continue;
    auto tokens = detail::split_tokens(line);
    const std::string& verb = tokens[0];
    if (verb == "batch") {
      if (batch_remaining > 0) throw ParseError("nested batch", lineno);
      if (tokens.size() != 2) throw ParseError("expected 'batch <count>'", lineno);
      batch_remaining = detail::parse_int<std::uint64_t>(tokens[1], lineno, "batch count");
      groups.push_back(UpdateGroup{true, {}});
      continue;
    }
    UpdateOp op;
    if (verb == "add") {
      op.kind = UpdateOp::Kind::Add;
      op.spec = detail::parse_edge_tokens(tokens, 1, lineno);
    } else if (verb == "del") {
      if (tokens.size() != 2) throw ParseError("expected 'del <edge-id>'", lineno);
      op.kind = UpdateOp::Kind::Del;
      op.id = detail::parse_int<EdgeId>(tokens[1], lineno, "edge id");
    } else {
      throw ParseError("unknown update '" + verb + "'", lineno);
    }
    if (batch_remaining > 0) {
      groups.back().ops.push_back(std::move(op));
      --batch_remaining;
    } else {
      groups.push_back(UpdateGroup{false, {std::move(op)}});
    }
  }
  if (batch_remaining > 0)
    throw ParseError("stream ended inside a batch, " + std::to_string(batch_remaining) +
                         " ops missing",
                     lineno + 1);
  return groups;
}

inline std::vector<UpdateGroup> read_dhu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_dhu(in);
}

inline void write_dhu(std::span<const UpdateGroup> groups, std::ostream& out) {
  auto write_op = [&](const UpdateOp& op) {
    if (op.kind == UpdateOp::Kind::Add) {
      out << "add " << op.spec.tail.size();
      for (VertexId u : op.spec.tail) out << ' ' << u;
      out << ' ' << op.spec.head.size();
      for (VertexId v : op.spec.head) out << ' ' << v;
      out << ' ' << detail::format_double(op.spec.weight) << "\n";
    } else {
      out << "del " << op.id << "\n";
    }
  };
  for (const UpdateGroup& g : groups) {
    if (g.is_batch) out << "batch " << g.ops.size() << "\n";
    for (const UpdateOp& op : g.ops) write_op(op);
  }
}

}  // namespace dhsparse
