"""Writes the shipped cases and scenarios. Run from the repository root."""
import json

K = 0.65    # static rating multiplier on the 24-bus lines; puts the dc infeasibility onset at 4400 MW
CS = 0.385  # candidate unit size relative to the unit it duplicates; total capacity caps dtlr at 4500 MW
COND = {"diameter": 0.035, "air_density": 1.293, "air_viscosity": 1.81e-5, "thermal_conductivity": 0.028,
        "wind_angle_coeff": 1.0, "emissivity": 0.75, "radiation_coeff": 2.5e-9,
        "resistance_ref": 8.0, "temperature_ref": 293.0, "thermal_resistivity": 0.003125,
        "elevation": 0.0, "heat_capacity": 1.0}
FACTORS = [0.5, 0.65, 0.8, 0.9, 1.0]
PERIODS = [{"id": f"d{i+1}", "load_factor": f} for i, f in enumerate(FACTORS)]
WEATHER = [(286.0, 3.1, 9.5), (289.0, 2.9, 11.0), (292.0, 2.6, 12.5), (295.0, 2.4, 13.5), (298.0, 2.23, 14.08)]

def scenario(name):
    return {"schema": "gridxpand-scenario/1", "name": name,
            "robust": {"phi": 0.05, "mu": 0.01, "reliability": 0.05},
            "weather": [{"period": p["id"], "lines": {"*": {"ambient_k": a, "wind_mps": v, "solar_w_per_m": s, "kr": 2.5e-9}}}
                        for p, (a, v, s) in zip(PERIODS, WEATHER)],
            "ohmic_tangents": 32}

def bus(i, w, ev=0, wind=0, pv=0):
    return {"id": str(i), "load_weight": w, "ev_forecast": [ev]*5, "wind_forecast": [wind]*5, "pv_forecast": [pv]*5}

def line(id, f, t, beta, limit, cand=False, cost=0.0, r=10.0, km=50.0, g=1.024):
    d = {"id": id, "from_bus": str(f), "to_bus": str(t), "susceptance": beta, "conductance": g,
         "resistance_at_tmax": r, "length": km, "t_max": 373.0, "flow_limit": limit, "conductor": "acsr"}
    if cand: d.update(candidate=True, install_cost=cost)
    return d

def gen(id, b, pmax, op, cand=False, cost=0.0):
    d = {"id": id, "bus": str(b), "op_cost": op, "p_max": pmax}
    if cand: d.update(candidate=True, install_cost=cost)
    return d

# 6-bus: corridors form a tree, candidates are extra circuits on existing corridors.
six = {"schema": "gridxpand/1", "name": "six_bus",
       "system": {"peak_demand": 300.0, "s_base_mva": 100.0, "v_base_kv": 132.0},
       "conductors": {"acsr": COND}, "periods": PERIODS,
       "buses": [bus(1, 0), bus(2, 0), bus(3, 0.4, 10, 20, 20), bus(4, 0.3, 10, 20, 20), bus(5, 0.3, 10, 20, 20), bus(6, 0)]}
F = 0.92
six["lines"] = [line("E13", 1, 3, 4.099, F), line("E24", 2, 4, 4.099, F), line("E65", 6, 5, 4.099, F),
                line("E34", 3, 4, 4.099, F), line("E45", 4, 5, 4.099, F),
                line("L1", 1, 3, 4.099, F, True, 4.0e6), line("L2", 2, 4, 4.099, F, True, 3.6e6),
                line("L3", 6, 5, 4.099, F, True, 3.2e6), line("L4", 3, 4, 4.099, F, True, 2.8e6),
                line("L5", 4, 5, 4.099, F, True, 3.0e6), line("L6", 1, 3, 4.099, F, True, 4.4e6),
                line("L7", 6, 5, 4.099, F, True, 3.8e6)]
six["generators"] = [gen("E1", 1, 100, 18), gen("E2", 2, 80, 19), gen("E6", 6, 100, 17),
    gen("U1", 1, 80, 20, True, 5.0e6), gen("U2", 2, 50, 21, True, 3.5e6), gen("U3", 6, 70, 20, True, 4.5e6),
    gen("U4", 6, 50, 21, True, 3.2e6), gen("U5", 6, 40, 22, True, 2.6e6),
    gen("G1", 1, 50, 23, True, 2.4e6), gen("G2", 1, 50, 25, True, 2.2e6), gen("G3", 1, 40, 27, True, 1.8e6),
    gen("G4", 2, 40, 24, True, 2.0e6), gen("G5", 2, 30, 26, True, 1.6e6),
    gen("G6", 6, 20, 24, True, 1.2e6), gen("G7", 6, 20, 25, True, 1.1e6), gen("G8", 6, 20, 26, True, 1.0e6)]
json.dump(six, open("data/cases/six_bus.json", "w"), indent=1)
json.dump(scenario("six_bus robust"), open("data/scenarios/six_bus_robust.json", "w"), indent=1)

# 24-bus: reliability-test-system topology (double circuits merged into one corridor line).
loads = {1:108,2:97,3:180,4:74,5:71,6:136,7:125,8:171,9:175,10:195,13:265,14:194,15:317,16:100,18:333,19:181,20:128}
tot = sum(loads.values())
res = {1,6,9,13,16,20}
buses = []
for i in range(1, 25):
    w = round(loads.get(i, 0)/tot, 12)
    buses.append(bus(i, w, 5 if i in res else 0, 15 if i in res else 0, 15 if i in res else 0))
s = sum(b["load_weight"] for b in buses); buses[17]["load_weight"] = round(buses[17]["load_weight"] + 1 - s, 12)
br = [(1,2,.0139,175),(1,3,.2112,175),(1,5,.0845,175),(2,4,.1267,175),(2,6,.192,175),(3,9,.119,175),(3,24,.0839,400),
      (4,9,.1037,175),(5,10,.0883,175),(6,10,.0605,175),(7,8,.0614,175),(8,9,.1651,175),(8,10,.1651,175),
      (9,11,.0839,400),(9,12,.0839,400),(10,11,.0839,400),(10,12,.0839,400),(11,13,.0476,500),(11,14,.0418,500),
      (12,13,.0476,500),(12,23,.0966,500),(13,23,.0865,500),(14,16,.0389,500),(15,16,.0173,500),(15,21,.0245,700),
      (15,24,.0519,500),(16,17,.0259,500),(16,19,.0231,500),(17,18,.0144,500),(17,22,.1053,500),(18,21,.01295,700),
      (19,20,.0198,700),(20,23,.0108,700),(21,22,.0678,500)]
lines = [line(f"E{f}-{t}", f, t, round(1/x, 4), round(K*cap/100, 4), r=0.88 if cap == 700 else 1.76, km=125.0) for f, t, x, cap in br]
cands = [(1,5,.0845,175),(3,24,.0839,400),(6,10,.0605,175),(7,8,.0614,175),(2,6,.192,175),(14,16,.0389,500),
         (15,24,.0519,500),(16,17,.0259,500),(3,9,.119,175),(10,12,.0839,400)]
for k, (f, t, x, cap) in enumerate(cands):
    lines.append(line(f"L{k+1}", f, t, round(1/x, 4), cap/100, True, 6.0e6 + 4.0e5*k, r=1.76, km=125.0))
units = [(1,20,22),(1,20,22),(1,76,14),(1,76,14),(2,20,22),(2,20,22),(2,76,14),(2,76,14),(7,100,19),(7,100,19),(7,100,19),
         (13,197,16),(13,197,16),(13,197,16),(15,12,25),(15,12,25),(15,12,25),(15,12,25),(15,12,25),(15,155,12),
         (16,155,12),(18,400,6),(21,400,6),(23,155,12),(23,155,12),(23,350,11)]
gens = [gen(f"E{k+1}", b, p, c) for k, (b, p, c) in enumerate(units)]
gens += [gen(f"H{k+1}", 22, 50, 1) for k in range(6)]
gens += [gen(f"U{k+1}", b, round(CS*p, 1), c + 1, True, round(1.2e4*CS*p)) for k, (b, p, c) in enumerate(units)]
rts = {"schema": "gridxpand/1", "name": "rts24", "system": {"peak_demand": 2850.0, "s_base_mva": 100.0, "v_base_kv": 132.0},
       "conductors": {"acsr": COND}, "periods": PERIODS, "buses": buses, "lines": lines, "generators": gens}
json.dump(rts, open("data/cases/rts24.json", "w"), indent=1)
json.dump(scenario("rts24 robust"), open("data/scenarios/rts24_robust.json", "w"), indent=1)
