"""
Potential Lab: numerical sphere means, mean-value inequalities and Liouville audits
势论实验室：球面均值、均值不等式与 Liouville 型审计的数值工具
"""

__version__ = "0.1.0"
__author__ = "Graduation Design Project"
