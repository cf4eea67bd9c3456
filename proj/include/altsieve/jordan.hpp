#pragma once

#include <map>
#include <string>
#include <vector>

#include "altsieve/gmod.hpp"
#include "altsieve/util.hpp"

namespace altsieve::jordan {

// Multiset of Jordan block sizes, e.g. 5^26,3.
struct JordanType {
    std::map<int, int, std::greater<int>> blocks;  // size -> count, largest first

    int total() const;
    bool operator==(const JordanType& o) const { return blocks == o.blocks; }
    bool operator<(const JordanType& o) const;
    std::string to_string() const;
    static JordanType parse(const std::string& s);  // "5^26,3"

    JordanType& add(int size, int count);
    JordanType& merge(const JordanType& o);
    static JordanType free_action(int dim, int p);  // dim/p blocks of size p
};

// Jordan type of a p-power-order element on an explicit module, via the rank
// sequence r_i = rank((rho(g)-1)^i).
JordanType jordan_type(const gmod::GModule& M, const perms::Perm& g);

// Assemble the type of a direct sum of summands with known types; projective
// summands act freely.
struct SummandType {
    JordanType type;
    int copies = 1;
};
JordanType jordan_of_shape(const std::vector<SummandType>& summands);

// Single Jordan block sizes of the regular unipotent of SL2 on a sum of
// p-restricted simples L(a): one block of size a+1 per weight.
JordanType sl2_jordan(const std::vector<int>& weights, int p);

}  // namespace altsieve::jordan
