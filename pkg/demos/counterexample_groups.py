"""Two groups where detection is exponentially expensive, and one where it
is nearly free.

The lamplighter group Z/2 wr Z needs quotients of size about 2^k to see a
word of length k; the signed-permutation extension of Z^2 needs only about
k^2; free abelian groups need about k.  Together they bracket the n^dim
behavior of the arithmetic groups.
"""

from resfin import counterexamples as cx

print("lamplighter: candidate with lamps at 1 and 1 + lcm(1..k)")
print(f"  {'k':>3} {'modulus':>8} {'order':>22}  injectivity")
for k in (4, 8, 16, 32, 64):
    r = cx.lamp_quotient_D(k)
    cert = cx.lamp_injectivity_certificate(k, r.modulus)
    print(f"  {k:>3} {r.modulus:>8} {r.order:>22}  {cert.status}")

print("\n  the obvious candidate (lamps at 1 and lcm) is worthless:")
for k in (4, 8, 16):
    r = cx.lamp_quotient_D(k, corrected=False)
    print(f"  k = {k:>2}: detected already at modulus {r.modulus}, order {r.order}")

print("\n  growth measured on squares collapses: a shifted variant of the")
print("  candidate squares into something order 24 sees, while the candidate")
print("  itself (same word length) needs the quotients above:")
for k in (6, 10):
    g = cx.LampElement(cx.lamp_candidate(k).support, 1)
    sq = cx.lamp_detect(g * g)
    full = cx.lamp_quotient_D(k)
    print(f"  k = {k:>2}: square seen by order {sq.order}, "
          f"candidate needs {full.order}")

print("\nsemidirect Z^2 x Q, Q the 8 signed permutation matrices")
print(f"  {'k':>3} {'d':>4} {'order 8d^2':>10}  kernel structure")
for k in (4, 8, 16, 32, 64):
    r = cx.semidirect_quotient_D(k)
    chk = cx.semidirect_kernel_structure_check(r.modulus)
    print(f"  {k:>3} {r.modulus:>4} {r.order:>10}  {chk.status}")

print("\nfree abelian baseline: D is the least non-divisor, about log-size")
for v in ((6, 0), (12, 18), (2520, 0)):
    r = cx.abelian_D(v)
    print(f"  v = {v}: quotient Z/{r.modulus}, order {r.order}")
