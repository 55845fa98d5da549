from .reports import ParameterSummary, GradcheckReport, ScoreReport
