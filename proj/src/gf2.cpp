#include "mahoraga/gf2.hpp"

#include <utility>

namespace mahoraga::gf2 {

std::vector<int> BitMatrix::rref() {
    std::vector<int> pivots;
    int next_row = 0;
    for (int c = 0; c < cols_ && next_row < rows_; ++c) {
        int pivot = -1;
        for (int r = next_row; r < rows_; ++r) {
            if (data_[r].get(c)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(data_[next_row], data_[pivot]);
        for (int r = 0; r < rows_; ++r) {
            if (r != next_row && data_[r].get(c)) {
                data_[r].xor_with(data_[next_row]);
            }
        }
        pivots.push_back(c);
        ++next_row;
    }
    return pivots;
}

int BitMatrix::rank() const {
    BitMatrix copy = *this;
    return static_cast<int>(copy.rref().size());
}

}  // namespace mahoraga::gf2
