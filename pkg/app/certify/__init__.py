"""Численные сертификаты устойчивости колонны.

- lyapunov: функция W пары, её производная, квадратичные границы и
  константа убывания (в замкнутой форме и точные),
- gain: ISS-усиление γ̃ и рекуррентная оценка 1/(1−γ̃),
- mmatrix: матрица S и поиск диагонального D,
- certificate: сборка всех чисел в один отчёт.
"""
