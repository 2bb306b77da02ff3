from author import *
ses = Session()
ses.load_existing(["eq_double"])

def hopf_lhs():
    d = Diagram()
    i = d.add_input(); o = d.add_output()
    z = d.add_node(ZSpider(Phase(0))); x = d.add_node(XSpider(Phase(0)))
    d.add_edge(("b", i), ("n", z))
    d.add_edge(("n", z), ("n", x)); d.add_edge(("n", z), ("n", x))
    d.add_edge(("n", x), ("b", o))
    d.add_node(ZSpider(Phase(0)))
    return d

def hopf_rhs():
    d = Diagram()
    i = d.add_input(); o = d.add_output()
    z = d.add_node(ZSpider(Phase(0))); x = d.add_node(XSpider(Phase(0)))
    d.add_edge(("b", i), ("n", z)); d.add_edge(("n", x), ("b", o))
    return d

pool = make_pool([r for r in fig1_rules() if r.name in ("S1","S1'","S3","B2")])
states = search(compact(hopf_lhs()), compact(hopf_rhs()), pool, depth=9, max_nodes=9, max_edges=11)
if states:
    steps, reached = path_to_steps(states, pool)
    for s in steps: print("  ", s)
    ses.save(Derivation("hopf_fig1", "fig1", compact(hopf_lhs()), steps, reached, []))
else:
    print("hopf NOT FOUND")
