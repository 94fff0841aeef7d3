# Generates the frozen reference values used by the unit and acceptance tests.
# Requires mpmath. Output is pasted into tests/oracle_values.hpp.
import mpmath as mp
mp.mp.dps = 50

def H(a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    return (mp.log(mp.beta(a, b)) + (a + b - 2) * mp.digamma(a + b)
            - (a - 1) * mp.digamma(a) - (b - 1) * mp.digamma(b))

def mi(a, b, k):
    a, b = mp.mpf(a), mp.mpf(b)
    total = H(a, b)
    for s in range(k + 1):
        p = mp.binomial(k, s) * mp.beta(a + s, b + k - s) / mp.beta(a, b)
        total -= p * H(a + s, b + k - s)
    return total

pts = ['0.001', '0.01', '0.1', '0.5', '1', '1.5', '2', '3.7', '7.25', '10', '25.5', '100', '1000', '123456.5', '10000000']
print('// x, ln_gamma(x), digamma(x)')
for x in pts:
    v = mp.mpf(x)
    print('    {%s, %s, %s},' % (x, mp.nstr(mp.loggamma(v), 25), mp.nstr(mp.digamma(v), 25)))
print('// entropy')
for a, b in [(2, 2), (0.5, 0.5), (3, 7), (100, 100), (0.7, 40)]:
    print('    {%s, %s, %s},' % (a, b, mp.nstr(H(a, b), 25)))
print('// mi a b k')
for a, b, k in [(1, 1, 1), (1, 1, 8), (2, 5, 8), (0.5, 0.5, 4), (30, 10, 16)]:
    print('    {%s, %s, %d, %s},' % (a, b, k, mp.nstr(mi(a, b, k), 25)))
print('// asymptotic |2(n+1) I - 1| at mean 0.5, K=1')
for n in [100, 1000, 10000]:
    i = mi(n / 2, n / 2, 1)
    print(n, mp.nstr(abs(2 * (n + 1) * i - 1), 10))
