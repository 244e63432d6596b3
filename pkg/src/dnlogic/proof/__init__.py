from .checker import check_proof, find_bad_node
from .decide import LawMatrix, decide, law_battery
from .g3 import prove_sequent_fo
from .g4ip import prove_il_prop
from .s4 import prove_s4
from .sequent import Proof, ProofNode, Sequent

__all__ = [
    "LawMatrix", "Proof", "ProofNode", "Sequent", "check_proof", "decide", "find_bad_node",
    "law_battery", "prove_il_prop", "prove_s4", "prove_sequent_fo",
]
