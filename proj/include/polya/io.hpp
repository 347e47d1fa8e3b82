#ifndef POLYA_IO_HPP
#define POLYA_IO_HPP

#include <complex>
#include <string>
#include <vector>

#include "polya/charfun.hpp"
#include "polya/moments.hpp"
#include "polya/simulate.hpp"

namespace polya {

/// Characteristic-function table for serialization.
struct CharFunTable {
    std::vector<double> x;
    std::vector<std::complex<double>> value;
    UrnParams params;
    Composition init;
};

/// CSV format: `# key=value` metadata comment lines, then a column header,
/// then rows. JSON mirrors the same fields.
std::string sample_set_csv(const SampleSet& s);
std::string sample_set_json(const SampleSet& s);
SampleSet sample_set_from_csv(const std::string& text);

std::string moment_table_csv(const MomentTable& t);
std::string moment_table_json(const MomentTable& t);

std::string density_grid_csv(const DensityGrid& g);
std::string density_grid_json(const DensityGrid& g);

std::string charfun_table_csv(const CharFunTable& t);
std::string charfun_table_json(const CharFunTable& t);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace polya

#endif
