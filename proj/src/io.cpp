#include "tablealg/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tablealg {

namespace {

// lines with comments stripped, tokenized
std::vector<std::vector<std::string>> tokenize(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("expected integer for " + what + ", got '" + s + "'");
  }
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("expected number for " + what + ", got '" + s + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  if (v == static_cast<long long>(v) && std::abs(v) < 1e15)
    return std::to_string(static_cast<long long>(v));
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

TableAlgebra parse_ta(const std::string& text, double tol) {
  auto lines = tokenize(text);
  if (lines.size() < 3) throw FormatError("truncated .ta input");
  if (lines[0].size() != 2 || lines[0][0] != "rank")
    throw FormatError("first line must be 'rank d'");
  int d = parse_int(lines[0][1], "rank");
  if (d <= 0) throw FormatError("rank must be positive");

  if (lines[1].empty() || lines[1][0] != "labels" ||
      static_cast<int>(lines[1].size()) != d + 1)
    throw FormatError("second line must be 'labels' followed by " +
                      std::to_string(d) + " names");
  std::vector<std::string> labels(lines[1].begin() + 1, lines[1].end());

  if (lines[2].empty() || lines[2][0] != "star" ||
      static_cast<int>(lines[2].size()) != d + 1)
    throw FormatError("third line must be 'star' followed by " +
                      std::to_string(d) + " indices");
  std::vector<int> star(d);
  for (int i = 0; i < d; ++i) star[i] = parse_int(lines[2][i + 1], "star");

  std::vector<double> lambda(static_cast<size_t>(d) * d * d, 0.0);
  for (size_t ln = 3; ln < lines.size(); ++ln) {
    const auto& t = lines[ln];
    if (t.size() != 4)
      throw FormatError("constant lines must be 'i j k v'");
    int i = parse_int(t[0], "i"), j = parse_int(t[1], "j"),
        k = parse_int(t[2], "k");
    if (i < 0 || i >= d || j < 0 || j >= d || k < 0 || k >= d)
      throw FormatError("index out of range in constant line");
    lambda[(static_cast<size_t>(i) * d + j) * d + k] = parse_num(t[3], "v");
  }
  return TableAlgebra::build(d, std::move(labels), std::move(lambda),
                             std::move(star), tol);
}

TableAlgebra load_ta(const std::string& path, double tol) {
  return parse_ta(read_file(path), tol);
}

std::string write_ta(const TableAlgebra& a) {
  std::ostringstream out;
  out << "rank " << a.rank() << "\n";
  out << "labels";
  for (const auto& l : a.labels()) out << " " << l;
  out << "\nstar";
  for (int s : a.star()) out << " " << s;
  out << "\n";
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j)
      for (int k = 0; k < a.rank(); ++k)
        if (a.lambda(i, j, k) != 0.0)
          out << i << " " << j << " " << k << " "
              << format_double(a.lambda(i, j, k)) << "\n";
  return out.str();
}

Scheme parse_scm(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0].size() != 4 || lines[0][0] != "points" ||
      lines[0][2] != "relations")
    throw FormatError("first line must be 'points n relations r'");
  int n = parse_int(lines[0][1], "points");
  int r = parse_int(lines[0][3], "relations");
  if (n <= 0 || r <= 0) throw FormatError("points/relations must be positive");
  if (static_cast<int>(lines.size()) != n + 1)
    throw FormatError("expected " + std::to_string(n) + " matrix rows");
  std::vector<int> relmat(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    const auto& row = lines[x + 1];
    if (static_cast<int>(row.size()) != n)
      throw FormatError("row " + std::to_string(x) + " has " +
                        std::to_string(row.size()) + " entries, expected " +
                        std::to_string(n));
    for (int y = 0; y < n; ++y) {
      int v = parse_int(row[y], "relation index");
      if (v < 0 || v >= r)
        throw FormatError("relation index out of range in row " +
                          std::to_string(x));
      relmat[static_cast<size_t>(x) * n + y] = v;
    }
  }
  Scheme s = make_scheme(n, std::move(relmat));
  if (s.nrels != r)
    throw FormatError("header declares " + std::to_string(r) +
                      " relations, matrix uses " + std::to_string(s.nrels));
  return s;
}

Scheme load_scm(const std::string& path) { return parse_scm(read_file(path)); }

std::string write_scm(const Scheme& s) {
  std::ostringstream out;
  out << "points " << s.npoints << " relations " << s.nrels << "\n";
  for (int x = 0; x < s.npoints; ++x) {
    for (int y = 0; y < s.npoints; ++y) {
      if (y) out << " ";
      out << s.rel(x, y);
    }
    out << "\n";
  }
  return out.str();
}

AlgebraHom parse_phi_map(const std::string& text, const TableAlgebra& source,
                         const TableAlgebra& target) {
  AlgebraHom phi;
  phi.source = source;
  phi.target = target;
  phi.image_index.assign(source.rank(), -1);
  phi.image_scalar.assign(source.rank(), 0.0);
  for (const auto& t : tokenize(text)) {
    if (t.size() != 3)
      throw FormatError("phi lines must be 'source-index target-index scalar'");
    int s = parse_int(t[0], "source index");
    int g = parse_int(t[1], "target index");
    double c = parse_num(t[2], "scalar");
    if (s < 0 || s >= source.rank() || g < 0 || g >= target.rank())
      throw FormatError("phi index out of range");
    if (phi.image_index[s] != -1)
      throw FormatError("duplicate phi line for source index " +
                        std::to_string(s));
    phi.image_index[s] = g;
    phi.image_scalar[s] = c;
  }
  for (int s = 0; s < source.rank(); ++s)
    if (phi.image_index[s] == -1)
      throw FormatError("phi map is missing source index " +
                        std::to_string(s));
  return phi;
}

std::string write_phi_map(const AlgebraHom& phi) {
  std::ostringstream out;
  for (size_t s = 0; s < phi.image_index.size(); ++s)
    out << s << " " << phi.image_index[s] << " "
        << format_double(phi.image_scalar[s]) << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << content;
}

}  // namespace tablealg
