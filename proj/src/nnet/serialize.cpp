#include "sarc/nnet/serialize.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace sarc::nnet {

std::string format_hex(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", value);
  return buf;
}

double parse_double(const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() || errno == ERANGE)
    throw std::runtime_error("checkpoint: malformed number '" + token + "'");
  return v;
}

namespace {

void expect(std::istream& in, const std::string& keyword) {
  std::string tok;
  if (!(in >> tok) || tok != keyword)
    throw std::runtime_error("checkpoint: expected '" + keyword + "', found '" + tok + "'");
}

long read_count(std::istream& in) {
  long n = 0;
  if (!(in >> n) || n < 0) throw std::runtime_error("checkpoint: malformed count");
  return n;
}

template <typename Block>
void write_values(std::ostream& out, const Block& block, Eigen::Index per_line) {
  for (Eigen::Index i = 0; i < block.size(); ++i) {
    out << format_hex(block.data()[i]);
    out << (((i + 1) % per_line == 0) ? '\n' : ' ');
  }
}

template <typename Block>
void read_values(std::istream& in, Block& block) {
  std::string tok;
  for (Eigen::Index i = 0; i < block.size(); ++i) {
    if (!(in >> tok)) throw std::runtime_error("checkpoint: truncated parameter block");
    block.data()[i] = parse_double(tok);
  }
}

}  // namespace

void save_mlp(std::ostream& out, const Mlp& mlp) {
  const auto& sizes = mlp.layer_sizes();
  out << "mlp " << sizes.size();
  for (int n : sizes) out << ' ' << n;
  out << '\n'
      << "activations " << to_string(mlp.hidden_activation()) << ' '
      << to_string(mlp.output_activation()) << '\n';
  const Params& p = mlp.params();
  for (std::size_t k = 0; k < p.weights.size(); ++k) {
    out << "weight " << k << ' ' << p.weights[k].rows() << ' ' << p.weights[k].cols() << '\n';
    write_values(out, p.weights[k], p.weights[k].cols());
    out << "bias " << k << ' ' << p.biases[k].size() << '\n';
    write_values(out, p.biases[k], p.biases[k].size());
  }
  out << "end-mlp\n";
}

Mlp load_mlp(std::istream& in) {
  expect(in, "mlp");
  const long n_sizes = read_count(in);
  std::vector<int> sizes(static_cast<std::size_t>(n_sizes));
  for (auto& s : sizes) s = static_cast<int>(read_count(in));
  expect(in, "activations");
  std::string hidden, output;
  in >> hidden >> output;
  Mlp mlp(sizes, activation_from_string(hidden), activation_from_string(output));
  Params& p = mlp.mutable_params();
  for (std::size_t k = 0; k < p.weights.size(); ++k) {
    expect(in, "weight");
    if (read_count(in) != static_cast<long>(k) || read_count(in) != p.weights[k].rows() ||
        read_count(in) != p.weights[k].cols())
      throw std::runtime_error("checkpoint: weight header does not match layer sizes");
    read_values(in, p.weights[k]);
    expect(in, "bias");
    if (read_count(in) != static_cast<long>(k) || read_count(in) != p.biases[k].size())
      throw std::runtime_error("checkpoint: bias header does not match layer sizes");
    read_values(in, p.biases[k]);
  }
  expect(in, "end-mlp");
  if (!p.all_finite()) throw std::runtime_error("checkpoint: non-finite parameter");
  return mlp;
}

}  // namespace sarc::nnet
