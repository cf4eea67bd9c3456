#include "altsieve/jordan.hpp"

#include "altsieve/mtx.hpp"

namespace altsieve::jordan {

int JordanType::total() const {
    int t = 0;
    for (auto& [s, c] : blocks) t += s * c;
    return t;
}

bool JordanType::operator<(const JordanType& o) const {
    return std::lexicographical_compare(blocks.begin(), blocks.end(), o.blocks.begin(), o.blocks.end());
}

std::string JordanType::to_string() const {
    std::string s;
    for (auto& [sz, c] : blocks) {
        if (c <= 0) continue;
        if (!s.empty()) s += ",";
        s += std::to_string(sz);
        if (c > 1) s += "^" + std::to_string(c);
    }
    return s.empty() ? "0" : s;
}

JordanType JordanType::parse(const std::string& s) {
    JordanType t;
    std::string norm = s;
    for (auto& c : norm)
        if (c == ' ') c = ',';
    for (const auto& part : util::split(norm, ',')) {
        auto p = util::strip(part);
        if (p.empty()) continue;
        auto caret = p.find('^');
        int size, count = 1;
        if (caret == std::string::npos) {
            size = int(util::parse_int(p));
        } else {
            size = int(util::parse_int(p.substr(0, caret)));
            count = int(util::parse_int(p.substr(caret + 1)));
        }
        t.add(size, count);
    }
    return t;
}

JordanType& JordanType::add(int size, int count) {
    if (count != 0) blocks[size] += count;
    if (blocks[size] == 0) blocks.erase(size);
    return *this;
}

JordanType& JordanType::merge(const JordanType& o) {
    for (auto& [s, c] : o.blocks) add(s, c);
    return *this;
}

JordanType JordanType::free_action(int dim, int p) {
    if (dim % p != 0) throw PreconditionViolated("free action needs p | dim");
    JordanType t;
    t.add(p, dim / p);
    return t;
}

JordanType jordan_type(const gmod::GModule& M, const perms::Perm& g) {
    JordanType t;
    for (auto& [size, count] : mtx::jordan_partition(M, g)) t.add(size, count);
    return t;
}

JordanType jordan_of_shape(const std::vector<SummandType>& summands) {
    JordanType t;
    for (const auto& s : summands)
        for (int i = 0; i < s.copies; i++) t.merge(s.type);
    return t;
}

JordanType sl2_jordan(const std::vector<int>& weights, int p) {
    JordanType t;
    for (int a : weights) {
        if (a < 0 || a >= p) throw NotPRestricted("weight " + std::to_string(a) + " is not restricted for p=" + std::to_string(p));
        t.add(a + 1, 1);
    }
    return t;
}

}  // namespace altsieve::jordan
