#include "latred/basis_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace latred {

namespace {

constexpr std::size_t kMaxTokenLen = 2'000'000;

class Cursor {
 public:
  explicit Cursor(std::istream& in) : in_(in) {}

  int peek() {
    skip_ws();
    return in_.peek();
  }
  int raw_peek() { return in_.peek(); }
  int get() {
    int c = in_.get();
    if (c == '\n') {
      ++line_;
      col_ = 0;
    } else if (c != EOF) {
      ++col_;
    }
    return c;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, col_ + 1, what);
  }
  int line() const { return line_; }
  int col() const { return col_ + 1; }

 private:
  void skip_ws() {
    while (true) {
      int c = in_.peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
        get();
      else
        break;
    }
  }
  std::istream& in_;
  int line_ = 1;
  int col_ = 0;
};

Int parse_int(Cursor& cur) {
  std::string tok;
  int c = cur.peek();
  if (c == '-' || c == '+') {
    tok.push_back(static_cast<char>(cur.get()));
    c = cur.raw_peek();
  }
  if (c < '0' || c > '9') cur.fail("expected integer");
  while (c >= '0' && c <= '9') {
    tok.push_back(static_cast<char>(cur.get()));
    if (tok.size() > kMaxTokenLen) throw OverlongToken(cur.line(), cur.col());
    c = cur.raw_peek();
  }
  return Int(tok);
}

}  // namespace

Basis read_basis(std::istream& in) {
  Cursor cur(in);
  if (cur.peek() != '[') cur.fail("expected '[' to open the matrix");
  cur.get();
  std::vector<std::vector<Int>> rows;
  while (true) {
    int c = cur.peek();
    if (c == ']') {
      cur.get();
      break;
    }
    if (c != '[') cur.fail("expected '[' to open a row or ']' to close");
    cur.get();
    std::vector<Int> row;
    while (true) {
      c = cur.peek();
      if (c == ']') {
        cur.get();
        break;
      }
      if (c == EOF) cur.fail("unterminated row");
      row.push_back(parse_int(cur));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      cur.fail("ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(cur.line(), cur.col(), "empty matrix");
  try {
    return Basis(std::move(rows));
  } catch (const ContractViolation& e) {
    throw ParseError(cur.line(), cur.col(), e.what());
  }
}

Basis read_basis(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_basis(in);
}

void write_basis(std::ostream& out, const Basis& b) {
  out << "[";
  for (int i = 0; i < b.rank(); ++i) {
    out << "[";
    for (int j = 0; j < b.dim(); ++j) {
      if (j) out << " ";
      out << b(i, j).get_str();
    }
    out << "]\n";
  }
  out << "]\n";
}

void write_basis(const std::string& path, const Basis& b) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_basis(out, b);
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace latred
