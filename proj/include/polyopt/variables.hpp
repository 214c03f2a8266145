#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace polyopt {

using VarId = std::uint32_t;

// Interned variable names. Ids are dense, assigned in insertion order;
// names are unique within one table.
class VarTable {
public:
    VarId intern(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        VarId id = static_cast<VarId>(names_.size());
        names_.push_back(name);
        index_.emplace(name, id);
        return id;
    }

    // Returns the id of `name`, or throws if it was never interned.
    VarId id_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw std::out_of_range("unknown variable: " + name);
        return it->second;
    }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    const std::string& name(VarId id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }

    friend bool operator==(const VarTable& a, const VarTable& b) {
        return a.names_ == b.names_;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VarId> index_;
};

} // namespace polyopt
