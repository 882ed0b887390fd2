#pragma once

#include <iosfwd>
#include <string>

#include "sarc/nnet/mlp.hpp"

namespace sarc::nnet {

// Text checkpoint block for one network. Floats are written as C99 hex
// literals (printf "%a"), so load(save(x)) is bit-exact.
//
//   mlp <n_sizes> <size_0> ... <size_n-1>
//   activations <hidden> <output>
//   weight <k> <rows> <cols>
//   <rows*cols hex floats, row-major, one row per line>
//   bias <k> <len>
//   <len hex floats>
//   ... repeated for each layer k ...
//   end-mlp
void save_mlp(std::ostream& out, const Mlp& mlp);
Mlp load_mlp(std::istream& in);

std::string format_hex(double value);
double parse_double(const std::string& token);

}  // namespace sarc::nnet
