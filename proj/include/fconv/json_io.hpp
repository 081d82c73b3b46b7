#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "fconv/domain.hpp"
#include "fconv/partition.hpp"

namespace fconv {

// File/format problem; message carries file name and position or field.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FunctionTable load_function_table(const std::string& path);
void save_function_table(std::ostream& out, const FunctionTable& f);

// Tensor files reference one of the table's domains by name ("L"|"R"|"T").
// Dense: {"domain":.., "n":.., "values":[..]}; sparse: {"domain":.., "n":..,
// "entries":[{"v":["a","b"],"val":5},..]} with omitted cells 0 and repeated
// cells accumulated.
TensorFunction load_tensor(const std::string& path, const FunctionTable& f);
void save_tensor(std::ostream& out, const TensorFunction& tensor, const std::string& domain_name);

CyclicPartition load_partition(const std::string& path, const FunctionTable& f);
void save_partition(std::ostream& out, const FunctionTable& f, const CyclicPartition& p);

// Graphviz export: one cluster per row-pair representation graph, edges
// colored by the piece that owns them.
void export_dot(std::ostream& out, const FunctionTable& f,
                const std::vector<TwoRowDecomposition>& decompositions);

}  // namespace fconv
