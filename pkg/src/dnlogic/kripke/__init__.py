from .model import KripkeModel, WellFormednessReport, check_model, force, make_model, model_from_dict, model_from_text
from .search import filtration_countermodel, search_countermodel

__all__ = [
    "KripkeModel", "WellFormednessReport", "check_model", "force", "make_model",
    "model_from_dict", "model_from_text", "filtration_countermodel", "search_countermodel",
]
