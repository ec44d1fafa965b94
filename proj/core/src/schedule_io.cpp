#include <cctype>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mlc/error.hpp"
#include "mlc/format.hpp"
#include "mlc/temporal.hpp"

namespace mlc {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

long long to_int(const std::string& tok, std::size_t line_no) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + tok + "'", line_no);
  }
  return v;
}

double to_real(const std::string& tok, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) throw ParseError("expected a number, got '" + tok + "'", line_no);
  return v;
}

}  // namespace

TemporalNetwork parse_schedule(std::istream& in) {
  TemporalNetwork net;
  bool have_n = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = split(line);
    if (t.empty() || t[0].front() == '%') continue;
    if (!have_n) {
      if (t.size() != 2 || t[0] != "n") throw ParseError("schedule must start with 'n <int>'", line_no);
      const long long n = to_int(t[1], line_no);
      if (n < 1) throw ParseError("n must be positive", line_no);
      net.n = static_cast<std::size_t>(n);
      have_n = true;
      continue;
    }
    if (t.size() == 3) {
      TemporalPiece p;
      p.t_start = to_real(t[0], line_no);
      p.t_end = to_real(t[1], line_no);
      const long long d = to_int(t[2], line_no);
      if (d != 0 && d != 1) throw ParseError("directed flag must be 0 or 1", line_no);
      p.directed = d == 1;
      p.A = DenseMatrix(net.n, net.n);
      net.pieces.push_back(std::move(p));
    } else if (t.size() == 2) {
      if (net.pieces.empty()) throw ParseError("edge before the first piece line", line_no);
      const long long i = to_int(t[0], line_no);
      const long long j = to_int(t[1], line_no);
      if (i < 0 || j < 0 || i >= static_cast<long long>(net.n) || j >= static_cast<long long>(net.n)) {
        throw ParseError("node index out of range", line_no);
      }
      if (i == j) throw ParseError("self loop", line_no);
      TemporalPiece& p = net.pieces.back();
      p.A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1.0;
      if (!p.directed) p.A(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = 1.0;
    } else {
      throw ParseError("expected 't_start t_end directed' or 'i j'", line_no);
    }
  }
  if (!have_n) throw ParseError("missing 'n <int>' header", line_no);
  try {
    net.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
  return net;
}

TemporalNetwork parse_schedule(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_schedule(in);
}

void write_schedule(std::ostream& out, const TemporalNetwork& net) {
  out << "n " << net.n << '\n';
  for (const TemporalPiece& p : net.pieces) {
    out << format_double(p.t_start) << ' ' << format_double(p.t_end) << ' ' << (p.directed ? 1 : 0) << '\n';
    for (std::size_t i = 0; i < net.n; ++i) {
      for (std::size_t j = p.directed ? 0 : i + 1; j < net.n; ++j) {
        if (p.A(i, j) != 0.0) out << i << ' ' << j << '\n';
      }
    }
  }
}

void write_trajectory_csv(std::ostream& out, const std::vector<TemporalRanking>& rankings, std::string_view comment) {
  out << "# " << comment << '\n';
  out << "t,node,broadcast,receive\n";
  for (const TemporalRanking& r : rankings) {
    for (std::size_t i = 0; i < r.broadcast.size(); ++i) {
      out << format_double(r.t) << ',' << i << ',' << format_double(r.broadcast[i]) << ','
          << format_double(r.receive[i]) << '\n';
    }
  }
}

}  // namespace mlc
