#include "freemul/nc_oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace freemul {

namespace {

constexpr int kMaxOrder = 16;

}  // namespace

std::uint64_t catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan: negative order");
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) {
        c = c * 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (static_cast<std::uint64_t>(i) + 2);
    }
    return c;
}

std::vector<NonCrossingPartition> enumerate_nc(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_nc: order must be positive");
    if (n > kMaxOrder) throw std::runtime_error("enumerate_nc: order too large for enumeration");

    std::vector<NonCrossingPartition> out;
    std::vector<std::vector<int>> blocks;

    // Partition the interval [lo, hi) and call done() once per completed
    // partition. The block containing lo is grown element by element; the gap
    // between consecutive chosen elements is an independent subinterval that
    // must be fully partitioned before the block continues.
    std::function<void(int, int, const std::function<void()>&)> part =
        [&](int lo, int hi, const std::function<void()>& done) {
            if (lo >= hi) {
                done();
                return;
            }
            std::vector<int> chosen{lo};
            std::function<void(int)> grow = [&](int last) {
                blocks.push_back(chosen);
                part(last + 1, hi, done);
                blocks.pop_back();
                for (int c = last + 1; c < hi; ++c) {
                    chosen.push_back(c);
                    part(last + 1, c, [&grow, c] { grow(c); });
                    chosen.pop_back();
                }
            };
            grow(lo);
        };

    part(1, n + 1, [&] { out.push_back(NonCrossingPartition{blocks}); });
    return out;
}

bool is_non_crossing(const NonCrossingPartition& p, int n) {
    std::vector<int> owner(static_cast<std::size_t>(n) + 1, -1);
    int covered = 0;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        if (p.blocks[b].empty()) return false;
        for (int e : p.blocks[b]) {
            if (e < 1 || e > n || owner[static_cast<std::size_t>(e)] != -1) return false;
            owner[static_cast<std::size_t>(e)] = static_cast<int>(b);
            ++covered;
        }
    }
    if (covered != n) return false;
    // A crossing is a<b<c<d with owner(a)=owner(c) != owner(b)=owner(d).
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                for (int d = c + 1; d <= n; ++d)
                    if (owner[a] == owner[c] && owner[b] == owner[d] && owner[a] != owner[b])
                        return false;
    return true;
}

namespace {

// Weight-summing recursion shared by the pure and the colored moment. The
// color of position i is col(i); blocks never mix colors. kap(color, size)
// is the weight attached to a closed block, and zero weights prune the
// search. No memoization: the value is recomputed from scratch every call,
// which keeps this an independent check on the faster algebra elsewhere.
class WeightSummer {
public:
    WeightSummer(std::function<int(int)> col, std::function<double(int, int)> kap)
        : col_(std::move(col)), kap_(std::move(kap)) {}

    double interval(int lo, int hi) const {
        if (lo >= hi) return 1.0;
        return extend(lo, lo, 1, hi);
    }

private:
    // Block started at `first` (fixing its color), last chosen element
    // `last`, `size` elements so far; the block may still recruit from
    // (last, hi). Each gap closed along the way is an independent interval.
    double extend(int first, int last, int size, int hi) const {
        double total = 0.0;
        double w = kap_(col_(first), size);
        if (w != 0.0) {
            double tail = interval(last + 1, hi);
            if (tail != 0.0) total += w * tail;
        }
        for (int c = last + 1; c < hi; ++c) {
            if (col_(c) != col_(first)) continue;
            double gap = interval(last + 1, c);
            if (gap == 0.0) continue;
            total += gap * extend(first, c, size + 1, hi);
        }
        return total;
    }

    std::function<int(int)> col_;
    std::function<double(int, int)> kap_;
};

}  // namespace

double moment_from_cumulants_nc(const CumulantSequence& k, int n) {
    if (n < 0) throw std::invalid_argument("moment_from_cumulants_nc: negative order");
    if (n > kMaxOrder) throw std::runtime_error("moment_from_cumulants_nc: order too large");
    if (n == 0) return 1.0;
    if (k.order() < n) {
        throw std::invalid_argument("moment_from_cumulants_nc: cumulants supplied up to order " +
                                    std::to_string(k.order()) + ", need " + std::to_string(n));
    }
    WeightSummer ws([](int) { return 0; },
                    [&k](int, int size) { return k.at(size); });
    return ws.interval(0, n);
}

double mixed_moment_xy(const CumulantSequence& kx, const CumulantSequence& ky,
                       WordPattern pattern, int n) {
    if (n < 0) throw std::invalid_argument("mixed_moment_xy: negative order");
    int len = 0;
    int first_color = 0;  // color of position 0 (0 = x, 1 = y)
    switch (pattern) {
        case WordPattern::xy_n:
            len = 2 * n;
            first_color = 0;
            break;
        case WordPattern::y_xy_n:
            len = 2 * n + 1;
            first_color = 1;
            break;
        case WordPattern::x_yx_n:
            len = 2 * n + 1;
            first_color = 0;
            break;
    }
    if (len > kMaxOrder) throw std::runtime_error("mixed_moment_xy: order too large");
    if (len == 0) return 1.0;

    int need_first = (len + 1) / 2;
    int need_second = len / 2;
    int need_x = first_color == 0 ? need_first : need_second;
    int need_y = first_color == 1 ? need_first : need_second;
    if (kx.order() < need_x || ky.order() < need_y) {
        throw std::invalid_argument("mixed_moment_xy: cumulants supplied up to orders " +
                                    std::to_string(kx.order()) + "," + std::to_string(ky.order()) +
                                    ", need " + std::to_string(need_x) + "," +
                                    std::to_string(need_y));
    }

    WeightSummer ws(
        [first_color](int i) { return (i % 2 == 0) ? first_color : 1 - first_color; },
        [&kx, &ky](int color, int size) { return color == 0 ? kx.at(size) : ky.at(size); });
    return ws.interval(0, len);
}

}  // namespace freemul
