#include "torsolab/graph_io.hpp"

#include <charconv>
#include <vector>

#include "torsolab/errors.hpp"

namespace torsolab {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

// Reads a non-negative decimal at `pos`, advancing it. Returns false if no
// digits are present or the value overflows.
bool read_number(std::string_view line, std::size_t& pos, long long& out) {
  const char* first = line.data() + pos;
  const char* last = line.data() + line.size();
  if (first == last || *first < '0' || *first > '9') return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc()) return false;
  pos = static_cast<std::size_t>(ptr - line.data());
  return true;
}

Graph parse_edge_list(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(trim(text.substr(start, end - start)));
    start = end + 1;
  }

  if (lines.empty() || lines[0].substr(0, 2) != "n=") {
    throw ParseError("expected header `n=<count>`", 1, 0);
  }
  std::size_t pos = 2;
  long long n = 0;
  if (!read_number(lines[0], pos, n) || pos != lines[0].size() || n > 1'000'000) {
    throw ParseError("malformed vertex count", 1, static_cast<int>(pos));
  }

  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> seen(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    const int lineno = static_cast<int>(i + 1);
    if (line.empty()) continue;
    pos = 0;
    long long u = 0;
    long long v = 0;
    if (!read_number(line, pos, u)) throw ParseError("expected vertex", lineno, 0);
    const std::size_t second = pos + 1;
    if (pos >= line.size() || line[pos] != ' ') {
      throw ParseError("expected single space", lineno, static_cast<int>(pos));
    }
    pos = second;
    if (!read_number(line, pos, v)) {
      throw ParseError("expected vertex", lineno, static_cast<int>(second));
    }
    if (pos != line.size()) {
      throw ParseError("trailing characters", lineno, static_cast<int>(pos));
    }
    if (u >= n) throw ParseError("endpoint out of range", lineno, 0);
    if (v >= n) throw ParseError("endpoint out of range", lineno, static_cast<int>(second));
    if (u == v) throw ParseError("self-loop", lineno, 0);
    const Edge e(static_cast<Vertex>(u), static_cast<Vertex>(v));
    auto& row = seen[e.u];
    for (Vertex w : row) {
      if (w == e.v) throw ParseError("duplicate edge", lineno, 0);
    }
    row.push_back(e.v);
    edges.push_back(e);
  }
  return Graph(static_cast<int>(n), edges);
}

Graph parse_graph6(std::string_view text) {
  constexpr std::string_view kHeader = ">>graph6<<";
  std::size_t base = 0;
  if (text.substr(0, kHeader.size()) == kHeader) base = kHeader.size();
  std::string_view body = text.substr(base);
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) {
    body.remove_suffix(1);
  }
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] < 63 || body[i] > 126) {
      throw ParseError("byte outside graph6 range", 1, static_cast<int>(base + i));
    }
  }
  if (body.empty()) throw ParseError("empty graph6 text", 1, static_cast<int>(base));

  std::size_t pos = 0;
  long long n = 0;
  auto take_bits = [&](int groups) {
    if (pos + static_cast<std::size_t>(groups) > body.size()) {
      throw ParseError("truncated vertex count", 1, static_cast<int>(base + pos));
    }
    long long value = 0;
    for (int k = 0; k < groups; ++k) value = (value << 6) | (body[pos++] - 63);
    return value;
  };
  if (body[0] != 126) {
    n = take_bits(1);
  } else if (body.size() > 1 && body[1] != 126) {
    pos = 1;
    n = take_bits(3);
  } else {
    pos = 2;
    n = take_bits(6);
  }
  if (n > 1'000'000) throw ParseError("vertex count too large", 1, static_cast<int>(base));

  const long long bits = n * (n - 1) / 2;
  const long long groups = (bits + 5) / 6;
  if (static_cast<long long>(body.size() - pos) != groups) {
    throw ParseError("expected " + std::to_string(groups) + " adjacency bytes",
                     1, static_cast<int>(base + pos));
  }
  std::vector<Edge> edges;
  long long k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int byte = body[pos + static_cast<std::size_t>(k / 6)] - 63;
      if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  for (; k < groups * 6; ++k) {
    const int byte = body[pos + static_cast<std::size_t>(k / 6)] - 63;
    if ((byte >> (5 - k % 6)) & 1) {
      throw ParseError("non-zero padding bit", 1,
                       static_cast<int>(base + pos + static_cast<std::size_t>(k / 6)));
    }
  }
  return Graph(static_cast<int>(n), edges);
}

std::string emit_graph6(const Graph& g) {
  std::string out;
  const long long n = g.order();
  auto put_bits = [&](long long value, int groups) {
    for (int k = groups - 1; k >= 0; --k) {
      out.push_back(static_cast<char>(((value >> (6 * k)) & 63) + 63));
    }
  };
  if (n <= 62) {
    put_bits(n, 1);
  } else if (n <= 258047) {
    out.push_back(126);
    put_bits(n, 3);
  } else {
    out.append(2, static_cast<char>(126));
    put_bits(n, 6);
  }
  int acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  out.push_back('\n');
  return out;
}

}  // namespace

Graph parse_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::kGraph6 ? parse_graph6(text) : parse_edge_list(text);
}

std::string emit_graph(const Graph& g, GraphFormat format) {
  if (format == GraphFormat::kGraph6) return emit_graph6(g);
  std::string out = "n=" + std::to_string(g.order()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

}  // namespace torsolab
