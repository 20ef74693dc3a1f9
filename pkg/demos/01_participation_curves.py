"""How the participation parameter shapes turnout along the line.

Tabulates the probability that a voter at z casts a vote, for several beta
values.  At beta = 0 everyone with a strict preference votes; as beta grows,
voters near the midpoint (indifferent) and voters far from both candidates
(alienated) drop out first.  Writes the full curve to participation_curves.csv
for plotting.
"""

from votedist import profile

BETAS = [0.0, 0.25, 0.5, 0.75, 1.0]
POINTS = [k / 40 - 1.0 for k in range(121)]  # z in [-1, 2]

rows = []
for beta in BETAS:
    for z in POINTS:
        rows.append((z, beta, profile(z, beta).participation))

with open("participation_curves.csv", "w") as fh:
    fh.write("z,beta,probability\n")
    for z, beta, p in rows:
        fh.write(f"{z:.12g},{beta:.12g},{p:.12g}\n")

print("probability of voting at selected positions")
print(f"{'z':>6} " + " ".join(f"beta={b:<5}" for b in BETAS))
for z in (-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0):
    ps = [profile(z, b).participation for b in BETAS]
    print(f"{z:6.2f} " + " ".join(f"{p:10.4f}" for p in ps))
print("\nfull curves written to participation_curves.csv")
