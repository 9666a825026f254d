#include "osort/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace osort {

namespace {

double parse_double(std::string_view text, std::size_t line_no) {
  const std::string copy(text);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_no) + ": bad real '" + copy + "'");
  }
  return value;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void validate(const InputSequence& seq) {
  for (const auto& item : seq.items) {
    if (kind_of(item) != seq.kind) {
      throw Error(ErrorCode::MixedItemKinds, "sequence mixes item kinds");
    }
    if (const auto* x = std::get_if<double>(&item); x && !std::isfinite(*x)) {
      throw Error(ErrorCode::DomainViolation, "non-finite real");
    }
    if (const auto* p = std::get_if<Point>(&item)) {
      if (p->dim() != seq.dim || p->dim() == 0) {
        throw Error(ErrorCode::MixedItemKinds, "point dimension mismatch");
      }
      for (double c : p->coords) {
        if (!std::isfinite(c)) throw Error(ErrorCode::DomainViolation, "non-finite coordinate");
      }
    }
  }
}

void write_trace(std::ostream& out, const InputSequence& seq) {
  switch (seq.kind) {
    case ItemKind::Real: out << "kind=real"; break;
    case ItemKind::Point: out << "kind=point:" << seq.dim; break;
    case ItemKind::Label: out << "kind=label"; break;
  }
  out << " n=" << seq.items.size() << '\n';
  for (const auto& item : seq.items) out << to_string(item) << '\n';
}

InputSequence read_trace(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::ParseError, "missing header");
  std::istringstream hs(trim(header));
  std::string kind_tok, n_tok;
  hs >> kind_tok >> n_tok;
  if (kind_tok.rfind("kind=", 0) != 0 || n_tok.rfind("n=", 0) != 0) {
    throw Error(ErrorCode::ParseError, "bad header '" + header + "'");
  }
  InputSequence seq;
  const std::string kind = kind_tok.substr(5);
  if (kind == "real") {
    seq.kind = ItemKind::Real;
  } else if (kind == "label") {
    seq.kind = ItemKind::Label;
  } else if (kind.rfind("point:", 0) == 0) {
    seq.kind = ItemKind::Point;
    const std::string d = kind.substr(6);
    auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), seq.dim);
    if (ec != std::errc{} || ptr != d.data() + d.size() || seq.dim == 0) {
      throw Error(ErrorCode::ParseError, "bad point dimension '" + d + "'");
    }
  } else {
    throw Error(ErrorCode::ParseError, "unknown kind '" + kind + "'");
  }
  std::size_t count = 0;
  {
    const std::string c = n_tok.substr(2);
    auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), count);
    if (ec != std::errc{} || ptr != c.data() + c.size()) {
      throw Error(ErrorCode::ParseError, "bad count '" + c + "'");
    }
  }
  seq.items.reserve(count);
  std::string line;
  std::size_t line_no = 1;
  while (seq.items.size() < count && std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    switch (seq.kind) {
      case ItemKind::Real:
        seq.items.emplace_back(parse_double(line, line_no));
        break;
      case ItemKind::Label: {
        Label label = 0;
        auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), label);
        if (ec != std::errc{} || ptr != line.data() + line.size()) {
          throw Error(ErrorCode::ParseError,
                      "line " + std::to_string(line_no) + ": bad label '" + line + "'");
        }
        seq.items.emplace_back(label);
        break;
      }
      case ItemKind::Point: {
        Point p;
        std::size_t pos = 0;
        while (true) {
          const auto comma = line.find(',', pos);
          p.coords.push_back(parse_double(
              std::string_view(line).substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos),
              line_no));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
        if (p.dim() != seq.dim) {
          throw Error(ErrorCode::ParseError,
                      "line " + std::to_string(line_no) + ": expected " +
                          std::to_string(seq.dim) + " coordinates");
        }
        seq.items.emplace_back(std::move(p));
        break;
      }
    }
  }
  if (seq.items.size() != count) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(count) + " items, got " +
                                           std::to_string(seq.items.size()));
  }
  return seq;
}

void write_trace_file(const std::string& path, const InputSequence& seq) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot open " + path);
  write_trace(out, seq);
}

InputSequence read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_trace(in);
}

}  // namespace osort
