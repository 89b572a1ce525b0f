#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace axelrod::detail {

/// Set over {0, ..., n-1} with O(1) insert, erase and uniform indexing.
/// Iteration order depends only on the sequence of operations.
class IndexedSet {
  public:
    explicit IndexedSet(std::size_t universe) : pos_(universe, npos) {}

    bool contains(std::size_t i) const noexcept { return pos_[i] != npos; }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    std::size_t at(std::size_t k) const noexcept { return items_[k]; }

    void insert(std::size_t i) {
        if (contains(i)) return;
        pos_[i] = items_.size();
        items_.push_back(i);
    }

    void erase(std::size_t i) {
        if (!contains(i)) return;
        const std::size_t k = pos_[i];
        const std::size_t last = items_.back();
        items_[k] = last;
        pos_[last] = k;
        items_.pop_back();
        pos_[i] = npos;
    }

    void assign(std::size_t i, bool present) {
        if (present)
            insert(i);
        else
            erase(i);
    }

  private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> items_;
    std::vector<std::size_t> pos_;
};

}  // namespace axelrod::detail
