#include "fconv/cyclicconv.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fconv/domain.hpp"

namespace fconv {

std::size_t Radices::product() const {
    return radix_product(r);
}

std::uint64_t Radices::root_modulus() const {
    std::uint64_t m = 1;
    for (int ri : r) {
        if (ri < 1) throw std::invalid_argument("radices must be positive");
        m = std::lcm(m, static_cast<std::uint64_t>(ri));
        if (ri > kDirectDftMax) {
            // Bluestein runs a power-of-two NTT of length >= 3r-2.
            m = std::lcm(m, next_pow2(3ull * static_cast<std::uint64_t>(ri) - 2));
        }
        if (m > (std::uint64_t(1) << 40)) throw std::invalid_argument("radices too large");
    }
    return m;
}

std::vector<std::uint64_t> find_primes(std::uint64_t root_modulus, Int bound) {
    if (root_modulus < 1) throw std::invalid_argument("root modulus must be positive");
    if (bound < 0) throw std::invalid_argument("bound must be non-negative");
    std::vector<std::uint64_t> primes;
    u128 target = u128(2) * u128(bound);
    u128 prod = 1;
    for (std::uint64_t c = 1 + root_modulus;; c += root_modulus) {
        if (!is_prime_u64(c)) continue;
        primes.push_back(c);
        prod *= c;
        if (prod > target) break;
    }
    return primes;
}

std::uint64_t find_root(std::uint64_t p, std::uint64_t order) {
    if (order == 0 || (p - 1) % order != 0)
        throw std::invalid_argument("order must divide p-1");
    // Prime factors of `order`, for the exact-order test.
    std::vector<std::uint64_t> factors;
    std::uint64_t rem = order;
    for (std::uint64_t q = 2; q * q <= rem; ++q) {
        if (rem % q == 0) {
            factors.push_back(q);
            while (rem % q == 0) rem /= q;
        }
    }
    if (rem > 1) factors.push_back(rem);

    std::uint64_t exp = (p - 1) / order;
    for (std::uint64_t g = 1; g < p; ++g) {
        std::uint64_t w = pow_mod(g, exp, p);
        bool exact = w != 0;
        for (std::uint64_t q : factors) {
            if (pow_mod(w, order / q, p) == 1) {
                exact = false;
                break;
            }
        }
        if (exact) return w;
    }
    throw std::logic_error("no element of the requested order (p not prime?)");
}

PrimePlan make_prime_plan(const Radices& radices, Int bound) {
    PrimePlan plan;
    plan.radices = radices;
    plan.bound = bound;
    plan.primes = find_primes(radices.root_modulus(), bound);
    plan.roots.reserve(plan.primes.size());
    for (std::uint64_t p : plan.primes) {
        std::vector<std::uint64_t> roots(radices.r.size());
        for (std::size_t i = 0; i < radices.r.size(); ++i)
            roots[i] = find_root(p, static_cast<std::uint64_t>(radices.r[i]));
        plan.roots.push_back(std::move(roots));
    }
    return plan;
}

namespace {

// Power table w^0..w^(n-1).
std::vector<std::uint64_t> power_table(std::uint64_t w, std::size_t n, std::uint64_t p) {
    std::vector<std::uint64_t> t(n);
    std::uint64_t cur = 1 % p;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = cur;
        cur = mul_mod(cur, w, p);
    }
    return t;
}

// In-place iterative power-of-two NTT with given root of order n.
void pow2_ntt(std::vector<std::uint64_t>& a, std::uint64_t root, std::uint64_t p) {
    std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t wlen = pow_mod(root, n / len, p);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t w = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::uint64_t u = a[i + j];
                std::uint64_t v = mul_mod(a[i + j + len / 2], w, p);
                a[i + j] = add_mod(u, v, p);
                a[i + j + len / 2] = sub_mod(u, v, p);
                w = mul_mod(w, wlen, p);
            }
        }
    }
}

// Transform of one axis length, reused across every stripe of that axis.
struct AxisTransform {
    std::size_t r = 1;
    std::uint64_t p = 2;
    // Direct path.
    std::vector<std::uint64_t> omega_pow;  // w^i, i < r
    // Bluestein path.
    bool bluestein = false;
    std::size_t conv_len = 0;
    std::uint64_t pow2_root = 0, pow2_root_inv = 0, conv_len_inv = 0;
    std::vector<std::uint64_t> chirp;        // w^(T(t)),  t < 2r-1,  T(t)=t(t-1)/2
    std::vector<std::uint64_t> chirp_inv;    // w^(-T(t))
    std::vector<std::uint64_t> b_transformed;  // NTT of the chirp kernel

    AxisTransform(std::size_t r_, std::uint64_t omega, std::uint64_t p_) : r(r_), p(p_) {
        if (r <= kDirectDftMax) {
            omega_pow = power_table(omega, r, p);
            return;
        }
        bluestein = true;
        conv_len = next_pow2(3 * r - 2);
        pow2_root = find_root(p, conv_len);
        pow2_root_inv = inv_mod(pow2_root, p);
        conv_len_inv = inv_mod(conv_len % p, p);
        chirp.resize(2 * r - 1);
        chirp_inv.resize(2 * r - 1);
        for (std::size_t t = 0; t < 2 * r - 1; ++t) {
            std::uint64_t tri = static_cast<std::uint64_t>((u128(t) * (t - 1) / 2) % r);
            chirp[t] = pow_mod(omega, tri, p);
            chirp_inv[t] = inv_mod(chirp[t], p);
        }
        std::vector<std::uint64_t> b(conv_len, 0);
        std::copy(chirp.begin(), chirp.end(), b.begin());
        pow2_ntt(b, pow2_root, p);
        b_transformed = std::move(b);
    }

    // y[k] = sum_j x[j] * w^(jk), via jk = T(j+k) - T(j) - T(k).
    void apply(std::uint64_t* x) const {
        if (r == 2) {
            // w = -1; plain butterfly.
            std::uint64_t a = x[0], b = x[1];
            x[0] = add_mod(a, b, p);
            x[1] = sub_mod(a, b, p);
            return;
        }
        if (!bluestein) {
            std::vector<std::uint64_t> y(r, 0);
            for (std::size_t k = 0; k < r; ++k) {
                std::uint64_t acc = 0;
                for (std::size_t j = 0; j < r; ++j)
                    acc = add_mod(acc, mul_mod(x[j], omega_pow[(j * k) % r], p), p);
                y[k] = acc;
            }
            std::copy(y.begin(), y.end(), x);
            return;
        }
        std::vector<std::uint64_t> a(conv_len, 0);
        for (std::size_t j = 0; j < r; ++j)
            a[r - 1 - j] = mul_mod(x[j], chirp_inv[j], p);
        pow2_ntt(a, pow2_root, p);
        for (std::size_t i = 0; i < conv_len; ++i) a[i] = mul_mod(a[i], b_transformed[i], p);
        pow2_ntt(a, pow2_root_inv, p);
        for (std::size_t k = 0; k < r; ++k) {
            std::uint64_t c = mul_mod(a[r - 1 + k], conv_len_inv, p);
            x[k] = mul_mod(c, chirp_inv[k], p);
        }
    }
};

void transform_tensor(std::vector<std::uint64_t>& vals, std::span<const int> radices,
                      std::span<const std::uint64_t> roots, std::uint64_t p, bool inverse) {
    std::size_t total = vals.size();
    std::size_t stride = total;
    std::vector<std::uint64_t> stripe;
    for (std::size_t axis = 0; axis < radices.size(); ++axis) {
        std::size_t r = static_cast<std::size_t>(radices[axis]);
        stride /= r;
        if (r == 1) continue;
        std::uint64_t w = roots[axis] % p;
        if (inverse) w = inv_mod(w, p);
        AxisTransform tf(r, w, p);
        stripe.resize(r);
        std::size_t block = stride * r;
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::size_t t = 0; t < r; ++t) stripe[t] = vals[base + off + t * stride];
                tf.apply(stripe.data());
                for (std::size_t t = 0; t < r; ++t) vals[base + off + t * stride] = stripe[t];
            }
        }
    }
}

}  // namespace

ModularTensor cyclic_convolve_mod_p(const ModularTensor& g, const ModularTensor& h,
                                    std::uint64_t p, std::span<const std::uint64_t> roots) {
    if (g.radices != h.radices) throw std::invalid_argument("radices mismatch");
    if (roots.size() != g.radices.size())
        throw std::logic_error("one root per axis required");
    std::size_t total = radix_product(g.radices);
    if (g.values.size() != total || h.values.size() != total)
        throw std::invalid_argument("tensor size does not match radices");

    ModularTensor out{g.radices, g.values};
    std::vector<std::uint64_t> hv = h.values;
    transform_tensor(out.values, out.radices, roots, p, false);
    transform_tensor(hv, out.radices, roots, p, false);
    for (std::size_t i = 0; i < total; ++i) out.values[i] = mul_mod(out.values[i], hv[i], p);
    transform_tensor(out.values, out.radices, roots, p, true);
    std::uint64_t scale = inv_mod(total % p, p);
    for (auto& v : out.values) v = mul_mod(v, scale, p);
    return out;
}

std::vector<Int> crt_combine(const std::vector<std::vector<std::uint64_t>>& residues,
                             std::span<const std::uint64_t> primes) {
    if (residues.size() != primes.size() || primes.empty())
        throw std::invalid_argument("one residue tensor per prime required");
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (std::gcd(primes[i], primes[j]) != 1)
                throw std::invalid_argument("moduli must be pairwise coprime");
    std::size_t cells = residues[0].size();
    for (const auto& r : residues)
        if (r.size() != cells) throw std::invalid_argument("residue tensors must share shape");

    // Garner-style incremental reconstruction; prefix products and their
    // inverses depend only on the prime list, so hoist them out of the cell loop.
    std::size_t s = primes.size();
    std::vector<std::uint64_t> prefix_mod(s), prefix_inv(s);
    u128 prod = 1;
    for (std::size_t j = 0; j < s; ++j) {
        prefix_mod[j] = static_cast<std::uint64_t>(prod % primes[j]);
        prefix_inv[j] = j == 0 ? 0 : inv_mod(prefix_mod[j], primes[j]);
        prod *= primes[j];
    }
    u128 half = prod / 2;

    std::vector<Int> out(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        u128 x = residues[0][c] % primes[0];
        u128 partial = primes[0];
        for (std::size_t j = 1; j < s; ++j) {
            std::uint64_t pj = primes[j];
            std::uint64_t xj = static_cast<std::uint64_t>(x % pj);
            std::uint64_t t = mul_mod(sub_mod(residues[j][c] % pj, xj, pj), prefix_inv[j], pj);
            x += u128(t) * partial;
            partial *= pj;
        }
        i128 centered = x > half ? i128(x) - i128(prod) : i128(x);
        if (centered > i128(std::numeric_limits<Int>::max()) ||
            centered < i128(std::numeric_limits<Int>::min()))
            throw std::overflow_error("CRT value exceeds 64-bit integer capacity");
        out[c] = static_cast<Int>(centered);
    }
    return out;
}

std::vector<Int> cyclic_convolve(std::span<const Int> g, std::span<const Int> h,
                                 std::span<const int> radices, Int bound) {
    Radices shape{std::vector<int>(radices.begin(), radices.end())};
    std::size_t total = shape.product();
    if (g.size() != total || h.size() != total)
        throw std::invalid_argument("tensor size does not match radices");

    if (bound == 0) {
        Int mg = 0, mh = 0;
        for (Int v : g) mg = std::max(mg, std::abs(v));
        for (Int v : h) mh = std::max(mh, std::abs(v));
        auto b = checked_mul(static_cast<Int>(total), std::max<Int>(mg, 1));
        if (b) b = checked_mul(*b, std::max<Int>(mh, 1));
        if (!b) throw std::overflow_error("cyclic convolution bound exceeds integer capacity");
        bound = *b;
    }

    PrimePlan plan = make_prime_plan(shape, bound);
    std::vector<std::vector<std::uint64_t>> residues;
    residues.reserve(plan.primes.size());
    for (std::size_t j = 0; j < plan.primes.size(); ++j) {
        std::uint64_t p = plan.primes[j];
        ModularTensor gm{shape.r, std::vector<std::uint64_t>(total)};
        ModularTensor hm{shape.r, std::vector<std::uint64_t>(total)};
        for (std::size_t i = 0; i < total; ++i) {
            Int gv = g[i] % static_cast<Int>(p);
            Int hv = h[i] % static_cast<Int>(p);
            gm.values[i] = static_cast<std::uint64_t>(gv < 0 ? gv + static_cast<Int>(p) : gv);
            hm.values[i] = static_cast<std::uint64_t>(hv < 0 ? hv + static_cast<Int>(p) : hv);
        }
        residues.push_back(cyclic_convolve_mod_p(gm, hm, p, plan.roots[j]).values);
    }
    return crt_combine(residues, plan.primes);
}

}  // namespace fconv
