import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from kleenelab.syntax import And, Bot, Consequent, Neg, Or, Top, Var  # noqa: E402

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def formulas(names=("p", "q", "r"), max_leaves=12):
    leaves = st.one_of(st.sampled_from(names).map(Var), st.just(Top()), st.just(Bot()))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(sub.map(Neg), st.builds(And, sub, sub), st.builds(Or, sub, sub)),
        max_leaves=max_leaves,
    )


def consequents(names=("p", "q", "r"), max_leaves=8):
    return st.builds(Consequent, formulas(names, max_leaves), formulas(names, max_leaves))


def pytest_terminal_summary(terminalreporter):
    module = next((m for name, m in list(sys.modules.items())
                   if name.endswith("test_acceptance") and hasattr(m, "RESULTS")), None)
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(module.RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
