"""Random model generators and event enumeration shared by the test suite."""

from galaxyck.epistemic import AumannModel


def random_partition(rng, states):
    """Shuffle, then cut into blocks of random sizes."""
    pool = list(states)
    rng.shuffle(pool)
    cells = []
    i = 0
    while i < len(pool):
        size = rng.randint(1, len(pool) - i)
        cells.append(pool[i : i + size])
        i += size
    return cells


def random_model(rng, max_states=6, agent_counts=(2, 3)):
    n = rng.randint(2, max_states)
    states = [f"s{i}" for i in range(n)]
    agents = [f"g{j}" for j in range(rng.choice(agent_counts))]
    return AumannModel(agents, {a: random_partition(rng, states) for a in agents})


def random_connected_model(rng, max_states=8, agent_counts=(2, 3)):
    while True:
        model = random_model(rng, max_states, agent_counts)
        if len(model.components()) == 1:
            return model


def all_events(states):
    states = list(states)
    for mask in range(1 << len(states)):
        yield frozenset(s for i, s in enumerate(states) if mask >> i & 1)
