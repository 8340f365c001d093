"""wordca: cellular automata acting on Sturmian and a-Sturmian words."""
